use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::CausalSet;

/// Slack allowed in metric checks and in the cylinder relation `dt >= d`.
pub const METRIC_TOL: f64 = 1e-9;

/// Largest warning cylinder the generator will build.
pub const MAX_CYLINDER_EVENTS: usize = 20_000;

/// A finite metric space given by its full distance table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricSample {
    n: usize,
    dist: Vec<f64>,
}

impl MetricSample {
    pub fn from_fn(n: usize, mut d: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                dist[i * n + j] = d(i, j);
            }
        }
        let s = MetricSample { n, dist };
        s.check_basic()?;
        Ok(s)
    }

    pub fn from_matrix(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::SizeMismatch {
                expected: n,
                found: r.len(),
            });
        }
        Self::from_fn(n, |i, j| rows[i][j])
    }

    pub fn euclidean(points: &[Vec<f64>]) -> Result<Self> {
        Self::from_fn(points.len(), |i, j| {
            points[i]
                .iter()
                .zip(&points[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
        })
    }

    pub fn linf(points: &[Vec<f64>]) -> Result<Self> {
        Self::from_fn(points.len(), |i, j| {
            points[i]
                .iter()
                .zip(&points[j])
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
    }

    fn check_basic(&self) -> Result<()> {
        for i in 0..self.n {
            if self.d(i, i) != 0.0 {
                return Err(Error::arg("distance", format!("d({i},{i}) is not zero")));
            }
            for j in 0..self.n {
                let v = self.d(i, j);
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::arg("distance", format!("d({i},{j}) = {v}")));
                }
                if (v - self.d(j, i)).abs() > METRIC_TOL {
                    return Err(Error::arg("distance", format!("d({i},{j}) is not symmetric")));
                }
            }
        }
        Ok(())
    }

    /// Fails with [`Error::Metric`] on the first violated triangle inequality.
    pub fn check_triangle(&self) -> Result<()> {
        for a in 0..self.n {
            for b in 0..self.n {
                let dab = self.d(a, b);
                for c in 0..self.n {
                    let excess = self.d(a, c) - dab - self.d(b, c);
                    if excess > METRIC_TOL {
                        return Err(Error::Metric { a, b, c, excess });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }
}

/// A point `(t, p)` of the cylinder `R x M`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CylinderEvent {
    pub t: f64,
    pub p: usize,
}

/// Signed Lorentzian distance on `R x M`: `sgn(s - t) sqrt((s - t)^2 - d^2)`
/// when `|s - t| > d(p, q)`, zero otherwise.
pub fn sigma_cylinder(x: CylinderEvent, y: CylinderEvent, d: &MetricSample) -> f64 {
    let dt = y.t - x.t;
    let dd = d.d(x.p, y.p);
    if dt.abs() > dd {
        dt.signum() * (dt * dt - dd * dd).sqrt()
    } else {
        0.0
    }
}

/// Events `times x points` (time-major) with `x <= y` iff `y.t - x.t >= d(x.p, y.p)`.
pub fn causal_cylinder(sample: &MetricSample, times: &[f64]) -> Result<(Vec<CylinderEvent>, CausalSet)> {
    if let Some(t) = times.iter().find(|t| !t.is_finite()) {
        return Err(Error::arg("times", format!("non-finite time {t}")));
    }
    sample.check_triangle()?;
    let events: Vec<CylinderEvent> = times
        .iter()
        .flat_map(|&t| (0..sample.len()).map(move |p| CylinderEvent { t, p }))
        .collect();
    let cs = CausalSet::from_fn(events.len(), |i, j| {
        let (x, y) = (events[i], events[j]);
        y.t - x.t >= sample.d(x.p, y.p) - METRIC_TOL
    })?;
    Ok((events, cs))
}

/// A product of chains placed in a causal cylinder over an `l_inf` space.
#[derive(Clone, Debug)]
pub struct LinfGridImage {
    pub points: Vec<Vec<f64>>,
    pub sample: MetricSample,
    pub times: Vec<f64>,
    pub events: Vec<CylinderEvent>,
    pub cs: CausalSet,
    /// Event index of each grid element (grid indices as in `grid_product_shape`).
    pub grid_to_event: Vec<usize>,
}

/// Null-coordinate image of a grid with 1 to 3 factors in `R x (R^(k-1), l_inf)`.
///
/// With `a = t - x`, `b = t + x`, `c = t - y`, `d = t + y`, the cylinder
/// order is `da, db, dc, dd >= 0`. Two factors map to `(a, b) = (z1, z2)`.
/// Three factors use `a = K z1 + z3`, `b = K z2 + z3`, `c = z3`,
/// `d = a + b - c` with `K` larger than any change in `z3`; then
/// `da, db >= 0` force `dz1, dz2 >= 0` and the image order is the product order.
pub fn linf_grid_cylinder(shape: &[usize]) -> Result<LinfGridImage> {
    if shape.is_empty() || shape.len() > 3 {
        return Err(Error::arg("shape", "supported for 1 to 3 factors"));
    }
    if shape.iter().any(|&l| l == 0) {
        return Err(Error::arg("shape", "every factor needs at least one element"));
    }
    let n: usize = shape.iter().product();
    let k_mult = *shape.last().unwrap() as f64;
    let mut images = Vec::with_capacity(n);
    for idx in 0..n {
        let z: Vec<f64> = super::grid_coords(shape, idx).into_iter().map(|c| c as f64).collect();
        let (t, x) = match z.len() {
            1 => (z[0], vec![]),
            2 => ((z[0] + z[1]) / 2.0, vec![(z[1] - z[0]) / 2.0]),
            _ => {
                let a = k_mult * z[0] + z[2];
                let b = k_mult * z[1] + z[2];
                let c = z[2];
                let d = a + b - c;
                ((a + b) / 2.0, vec![(b - a) / 2.0, (d - c) / 2.0])
            }
        };
        images.push((t, x));
    }
    let mut points: Vec<Vec<f64>> = Vec::new();
    let mut times: Vec<f64> = Vec::new();
    for (t, x) in &images {
        if !points.contains(x) {
            points.push(x.clone());
        }
        if !times.contains(t) {
            times.push(*t);
        }
    }
    times.sort_by(f64::total_cmp);
    let sample = MetricSample::linf(&points)?;
    let (events, cs) = causal_cylinder(&sample, &times)?;
    let grid_to_event = images
        .iter()
        .map(|(t, x)| {
            let ti = times.iter().position(|s| s == t).unwrap();
            let pi = points.iter().position(|q| q == x).unwrap();
            ti * points.len() + pi
        })
        .collect();
    Ok(LinfGridImage {
        points,
        sample,
        times,
        events,
        cs,
        grid_to_event,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WarningGrid {
    pub nt: usize,
    pub ns: usize,
    pub ntheta: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WarningEvent {
    pub t: f64,
    pub s: f64,
    pub theta: f64,
}

#[derive(Clone, Debug)]
pub struct WarningCylinder {
    pub events: Vec<WarningEvent>,
    pub cs: CausalSet,
    /// The event at `t = 0`, `theta = 0` and `s` closest to 0.
    pub bottom_center: usize,
}

/// Lattice sample of `[0, T] x [-T, T] x S^1` in `-dt^2 + ds^2 + dtheta^2`.
///
/// `theta` is arc length on a circle of the given circumference and the
/// spatial distance is `sqrt(ds^2 + dtheta^2)`. Events are ordered
/// time-major, then `s`, then `theta`.
pub fn warning_cylinder(circumference: f64, t_max: f64, grid: WarningGrid) -> Result<WarningCylinder> {
    if !(circumference > 0.0 && circumference.is_finite()) {
        return Err(Error::arg("circumference", "must be positive"));
    }
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::arg("T", "must be positive"));
    }
    if grid.nt < 2 || grid.ns == 0 || grid.ntheta == 0 {
        return Err(Error::arg("grid", "need nt >= 2, ns >= 1, ntheta >= 1"));
    }
    let total = grid.nt as u128 * grid.ns as u128 * grid.ntheta as u128;
    if total > MAX_CYLINDER_EVENTS as u128 {
        return Err(Error::SizeLimit {
            what: "warning cylinder",
            size: total,
            limit: MAX_CYLINDER_EVENTS as u128,
        });
    }
    let s_half = t_max;
    let s_at = |j: usize| {
        if grid.ns == 1 {
            0.0
        } else {
            -s_half + 2.0 * s_half * j as f64 / (grid.ns - 1) as f64
        }
    };
    let mut spatial = Vec::with_capacity(grid.ns * grid.ntheta);
    for j in 0..grid.ns {
        for l in 0..grid.ntheta {
            spatial.push((s_at(j), circumference * l as f64 / grid.ntheta as f64));
        }
    }
    let sample = MetricSample::from_fn(spatial.len(), |a, b| {
        let ds = spatial[a].0 - spatial[b].0;
        let raw = (spatial[a].1 - spatial[b].1).abs() % circumference;
        let dth = raw.min(circumference - raw);
        (ds * ds + dth * dth).sqrt()
    })?;
    let times: Vec<f64> = (0..grid.nt)
        .map(|i| t_max * i as f64 / (grid.nt - 1) as f64)
        .collect();
    let (cyl, cs) = causal_cylinder(&sample, &times)?;
    let events = cyl
        .iter()
        .map(|e| WarningEvent {
            t: e.t,
            s: spatial[e.p].0,
            theta: spatial[e.p].1,
        })
        .collect();
    let mid = (0..grid.ns)
        .min_by(|&a, &b| s_at(a).abs().total_cmp(&s_at(b).abs()))
        .unwrap();
    Ok(WarningCylinder {
        events,
        cs,
        bottom_center: mid * grid.ntheta,
    })
}
