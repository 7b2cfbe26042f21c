//! Angle arguments: `<number>d` for degrees, `<number>r` for radians.

use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Angle {
    radians: f64,
    /// Value and unit as given, for echoing.
    given: f64,
    text_degrees: bool,
}

impl Angle {
    pub fn from_degrees(d: f64) -> Self {
        Self {
            radians: d.to_radians(),
            given: d,
            text_degrees: true,
        }
    }

    pub fn from_radians(r: f64) -> Self {
        Self {
            radians: r,
            given: r,
            text_degrees: false,
        }
    }

    pub fn radians(self) -> f64 {
        self.radians
    }

    pub fn degrees(self) -> f64 {
        self.radians.to_degrees()
    }
}

#[derive(Debug, PartialEq, Eq)]
pub struct AngleError(String);

impl fmt::Display for AngleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "malformed angle {:?}: expected a number with a unit suffix, like 30d or 0.5r",
            self.0
        )
    }
}

impl std::error::Error for AngleError {}

impl FromStr for Angle {
    type Err = AngleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || AngleError(s.to_string());
        let t = s.trim();
        let (num, unit) = t.split_at(t.len().checked_sub(1).ok_or_else(err)?);
        let v: f64 = num.parse().map_err(|_| err())?;
        if !v.is_finite() {
            return Err(err());
        }
        match unit {
            "d" => Ok(Self::from_degrees(v)),
            "r" => Ok(Self::from_radians(v)),
            _ => Err(err()),
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unit = if self.text_degrees { 'd' } else { 'r' };
        write!(f, "{}{unit}", self.given)
    }
}
