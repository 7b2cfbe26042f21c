//! Reference integrator on the physical fields, written directly from
//!
//! ```text
//! d_t E = c curl H,   d_t H = -c curl E,
//! d_t A = -c (E + grad A0),   d_t A0 = -c div A
//! ```
//!
//! with the same stencil and RK4 as the KDP-form integrator and no use of the
//! beta matrices. Packing the result must reproduce the KDP-form grid.

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;

use super::Stencil;
use crate::fields::{EMFields, FieldGrid, Packing};
use crate::Real;

type CField<T> = EMFields<Complex<T>>;

#[derive(Clone, Debug)]
pub struct CurlEvolver<T> {
    shape: [usize; 3],
    spacing: T,
    time: T,
    packing: Packing<T>,
    fields: Vec<CField<T>>,
    c: T,
    stencil: Stencil,
    track_potentials: bool,
}

fn zero_fields<T: Real>() -> CField<T> {
    EMFields {
        e: [Complex::zero(); 3],
        h: [Complex::zero(); 3],
        a: [Complex::zero(); 3],
        a0: Complex::zero(),
    }
}

fn combine<T: Real>(x: &CField<T>, y: &CField<T>, s: T) -> CField<T> {
    EMFields {
        e: std::array::from_fn(|k| x.e[k] + y.e[k] * s),
        h: std::array::from_fn(|k| x.h[k] + y.h[k] * s),
        a: std::array::from_fn(|k| x.a[k] + y.a[k] * s),
        a0: x.a0 + y.a0 * s,
    }
}

impl<T: Real> CurlEvolver<T> {
    pub fn from_grid(grid: &FieldGrid<T>, c: T, stencil: Stencil, track_potentials: bool) -> Self {
        Self {
            shape: grid.shape(),
            spacing: grid.spacing(),
            time: grid.time,
            packing: grid.packing,
            fields: grid.data().iter().map(|p| grid.packing.unpack(p)).collect(),
            c,
            stencil,
            track_potentials,
        }
    }

    pub fn to_grid(&self) -> FieldGrid<T> {
        let data = self
            .fields
            .iter()
            .map(|f| {
                // pack is linear; apply it to real and imaginary parts separately
                let re = self.packing.pack(&f.re());
                let im = self.packing.pack(&EMFields {
                    e: f.e.map(|z| z.im),
                    h: f.h.map(|z| z.im),
                    a: f.a.map(|z| z.im),
                    a0: f.a0.im,
                });
                let i = Complex::<T>::i();
                crate::FieldVector(std::array::from_fn(|k| re.0[k] + i * im.0[k]))
            })
            .collect();
        FieldGrid::with_data(self.shape, self.spacing, self.time, self.packing, data)
    }

    fn neighbor(&self, idx: usize, axis: usize, off: isize) -> usize {
        let [nx, ny, _] = self.shape;
        let mut c = [idx % nx, (idx / nx) % ny, idx / (nx * ny)];
        let n = self.shape[axis] as isize;
        c[axis] = (c[axis] as isize + off).rem_euclid(n) as usize;
        c[0] + nx * (c[1] + ny * c[2])
    }

    fn rhs(&self, state: &[CField<T>]) -> Vec<CField<T>> {
        let inv_dx = T::one() / self.spacing;
        let taps: Vec<(isize, T)> = self
            .stencil
            .first_derivative()
            .iter()
            .map(|&(o, w)| (o, T::lit(w) * inv_dx))
            .collect();
        (0..state.len())
            .into_par_iter()
            .map(|idx| {
                // grads[axis] = d/dx_axis of every field at idx
                let grads: [CField<T>; 3] = std::array::from_fn(|axis| {
                    let mut g = zero_fields();
                    for &(off, w) in &taps {
                        g = combine(&g, &state[self.neighbor(idx, axis, off)], w);
                    }
                    g
                });
                let curl = |v: fn(&CField<T>) -> [Complex<T>; 3]| {
                    [
                        v(&grads[1])[2] - v(&grads[2])[1],
                        v(&grads[2])[0] - v(&grads[0])[2],
                        v(&grads[0])[1] - v(&grads[1])[0],
                    ]
                };
                let c = self.c;
                let curl_h = curl(|f| f.h);
                let curl_e = curl(|f| f.e);
                let here = &state[idx];
                let mut out = EMFields {
                    e: curl_h.map(|z| z * c),
                    h: curl_e.map(|z| -z * c),
                    a: [Complex::zero(); 3],
                    a0: Complex::zero(),
                };
                if self.track_potentials {
                    out.a = std::array::from_fn(|k| -(here.e[k] + grads[k].a0) * c);
                    out.a0 = -(grads[0].a[0] + grads[1].a[1] + grads[2].a[2]) * c;
                }
                out
            })
            .collect()
    }

    pub fn step(&mut self, dt: T) {
        let half = dt * T::lit(0.5);
        let k1 = self.rhs(&self.fields);
        let s2: Vec<_> = self
            .fields
            .iter()
            .zip(&k1)
            .map(|(f, k)| combine(f, k, half))
            .collect();
        let k2 = self.rhs(&s2);
        let s3: Vec<_> = self
            .fields
            .iter()
            .zip(&k2)
            .map(|(f, k)| combine(f, k, half))
            .collect();
        let k3 = self.rhs(&s3);
        let s4: Vec<_> = self
            .fields
            .iter()
            .zip(&k3)
            .map(|(f, k)| combine(f, k, dt))
            .collect();
        let k4 = self.rhs(&s4);
        let sixth = dt / T::lit(6.0);
        let two = T::lit(2.0);
        for (i, f) in self.fields.iter_mut().enumerate() {
            let incr = combine(
                &combine(&combine(&k1[i], &k2[i], two), &k3[i], two),
                &k4[i],
                T::one(),
            );
            *f = combine(f, &incr, sixth);
        }
        self.time += dt;
    }
}
