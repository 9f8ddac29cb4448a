//! Nelder–Mead downhill simplex with dimension-adaptive coefficients
//! (Gao & Han, 2012), which behaves better than the classic 1/2/0.5/0.5
//! set above a handful of dimensions.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    pub max_iterations: usize,
    /// Stop once `f(worst) - f(best)` is at most this...
    pub f_tolerance: f64,
    /// ...and every vertex lies within this distance (per coordinate) of the best.
    pub x_tolerance: f64,
    /// Edge length of the initial axis-aligned simplex.
    pub initial_step: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self { max_iterations: 5000, f_tolerance: 1e-12, x_tolerance: 1e-9, initial_step: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Best vertex value after each iteration.
    pub trace: Vec<f64>,
}

struct Simplex {
    points: Vec<Vec<f64>>,
    values: Vec<f64>,
}

impl Simplex {
    /// Orders vertices best to worst; ties keep insertion order.
    fn sort(&mut self) {
        let mut order: Vec<usize> = (0..self.values.len()).collect();
        order.sort_by(|&a, &b| self.values[a].total_cmp(&self.values[b]));
        self.points = order.iter().map(|&i| self.points[i].clone()).collect();
        self.values = order.iter().map(|&i| self.values[i]).collect();
    }

    fn spread(&self) -> (f64, f64) {
        let best = &self.points[0];
        let dx = self.points[1..]
            .iter()
            .flat_map(|p| p.iter().zip(best).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        (self.values[self.values.len() - 1] - self.values[0], dx)
    }
}

fn along(from: &[f64], to: &[f64], t: f64) -> Vec<f64> {
    from.iter().zip(to).map(|(a, b)| a + t * (b - a)).collect()
}

/// Minimises `objective` from `start`. Non-finite objective values met during
/// the search count as `+inf`; a non-finite value at `start` is an error.
pub fn nelder_mead<F>(objective: F, start: &[f64], options: &SimplexOptions) -> Result<Minimum>
where
    F: Fn(&[f64]) -> f64,
{
    let f = |x: &[f64]| {
        let v = objective(x);
        if v.is_finite() {
            v
        } else {
            f64::INFINITY
        }
    };
    let f0 = objective(start);
    if !f0.is_finite() {
        return Err(Error::input("objective is not finite at the starting point"));
    }
    let n = start.len();
    if n == 0 {
        return Ok(Minimum { x: vec![], value: f0, iterations: 0, converged: true, trace: vec![] });
    }

    let nf = n as f64;
    let reflect = 1.0;
    let expand = 1.0 + 2.0 / nf;
    let contract = 0.75 - 1.0 / (2.0 * nf);
    let shrink = 1.0 - 1.0 / nf;

    let mut simplex = Simplex { points: vec![start.to_vec()], values: vec![f0] };
    for i in 0..n {
        let mut p = start.to_vec();
        p[i] += options.initial_step;
        simplex.values.push(f(&p));
        simplex.points.push(p);
    }
    simplex.sort();

    let mut trace = Vec::new();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < options.max_iterations {
        let (df, dx) = simplex.spread();
        if df <= options.f_tolerance && dx <= options.x_tolerance {
            converged = true;
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; n];
        for p in &simplex.points[..n] {
            for (c, x) in centroid.iter_mut().zip(p) {
                *c += x / nf;
            }
        }
        let worst = simplex.points[n].clone();
        let (f_best, f_second, f_worst) = (simplex.values[0], simplex.values[n - 1], simplex.values[n]);

        // Reflection point c + (c - worst).
        let xr = along(&centroid, &worst, -reflect);
        let fr = f(&xr);
        let mut replacement = None;
        if fr < f_best {
            let xe = along(&centroid, &worst, -reflect * expand);
            let fe = f(&xe);
            replacement = Some(if fe < fr { (xe, fe) } else { (xr, fr) });
        } else if fr < f_second {
            replacement = Some((xr, fr));
        } else if fr < f_worst {
            let xc = along(&centroid, &worst, -reflect * contract);
            let fc = f(&xc);
            if fc <= fr {
                replacement = Some((xc, fc));
            }
        } else {
            let xc = along(&centroid, &worst, contract);
            let fc = f(&xc);
            if fc < f_worst {
                replacement = Some((xc, fc));
            }
        }

        match replacement {
            Some((x, v)) => {
                simplex.points[n] = x;
                simplex.values[n] = v;
            }
            None => {
                let best = simplex.points[0].clone();
                for i in 1..=n {
                    simplex.points[i] = along(&best, &simplex.points[i], shrink);
                    simplex.values[i] = f(&simplex.points[i]);
                }
            }
        }
        simplex.sort();
        trace.push(simplex.values[0]);
    }

    Ok(Minimum {
        x: simplex.points.swap_remove(0),
        value: simplex.values[0],
        iterations,
        converged,
        trace,
    })
}
