use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::CausalSet;

/// Minimum Euclidean separation between sampled points; closer draws are resampled.
pub const MIN_SEPARATION: f64 = 1e-9;

/// Where a cloud was drawn from, and therefore which causal rule orders it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    /// `J(q-, q+)` with `q± = (±1, 0, ..., 0)`.
    Diamond,
    /// `[-1, 1]^(n+1)`.
    Box,
    /// Hand-placed Minkowski points.
    Explicit,
    /// Two-dimensional de Sitter space in `(t, theta)` coordinates, `|t| <= t_max`.
    DeSitter2 { t_max: f64 },
}

impl Region {
    pub fn name(&self) -> &'static str {
        match self {
            Region::Diamond => "diamond",
            Region::Box => "box",
            Region::Explicit => "explicit",
            Region::DeSitter2 { .. } => "desitter2",
        }
    }
}

/// Points of a model spacetime, time coordinate first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EventCloud {
    pub n_spatial: usize,
    pub coords: Vec<Vec<f64>>,
    pub region: Region,
    pub seed: Option<u64>,
}

impl EventCloud {
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn dim_spacetime(&self) -> usize {
        self.n_spatial + 1
    }

    /// Squared spatial distance between points `i` and `j`.
    pub fn spatial_dist2(&self, i: usize, j: usize) -> f64 {
        let (x, y) = (&self.coords[i], &self.coords[j]);
        x[1..].iter().zip(&y[1..]).map(|(a, b)| (b - a) * (b - a)).sum()
    }

    /// Euclidean distance in coordinate space (time included).
    pub fn coord_dist(&self, i: usize, j: usize) -> f64 {
        let (x, y) = (&self.coords[i], &self.coords[j]);
        x.iter().zip(y).map(|(a, b)| (b - a) * (b - a)).sum::<f64>().sqrt()
    }

    /// Minkowski interval `(dt)^2 - |dx|^2` from `i` to `j`.
    pub fn sigma2(&self, i: usize, j: usize) -> f64 {
        let dt = self.coords[j][0] - self.coords[i][0];
        dt * dt - self.spatial_dist2(i, j)
    }

    /// Causal precedence `i <= j` under the cloud's model.
    pub fn causal_le(&self, i: usize, j: usize) -> bool {
        if i == j {
            return true;
        }
        let (x, y) = (&self.coords[i], &self.coords[j]);
        match self.region {
            Region::DeSitter2 { .. } => {
                let dtau = gudermannian(y[0]) - gudermannian(x[0]);
                dtau >= 0.0 && circle_gap(x[1], y[1]) <= dtau
            }
            _ => {
                let dt = y[0] - x[0];
                dt >= 0.0 && dt * dt >= self.spatial_dist2(i, j)
            }
        }
    }

    /// Strict chronological precedence (timelike separation) for Minkowski clouds.
    pub fn timelike(&self, i: usize, j: usize) -> bool {
        i != j && self.coords[j][0] > self.coords[i][0] && self.sigma2(i, j) > 0.0
    }

    pub fn causal_set(&self) -> Result<CausalSet> {
        CausalSet::from_fn(self.len(), |i, j| self.causal_le(i, j))
    }
}

/// Conformal time of the 2D de Sitter chart `ds^2 = -dt^2 + cosh^2(t) dtheta^2`.
pub fn gudermannian(t: f64) -> f64 {
    2.0 * (t / 2.0).tanh().atan()
}

/// Arc length between two angles on the unit circle.
pub fn circle_gap(a: f64, b: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let d = (a - b).rem_euclid(tau);
    d.min(tau - d)
}

fn in_region(region: &Region, x: &[f64]) -> bool {
    match region {
        Region::Diamond => {
            let r2: f64 = x[1..].iter().map(|v| v * v).sum();
            r2.sqrt() <= 1.0 - x[0].abs()
        }
        Region::Box => x.iter().all(|v| v.abs() <= 1.0),
        Region::Explicit => true,
        Region::DeSitter2 { t_max } => x[0].abs() <= *t_max,
    }
}

fn too_close(points: &[Vec<f64>], x: &[f64]) -> bool {
    points.iter().any(|p| {
        let d2: f64 = p.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum();
        d2 < MIN_SEPARATION * MIN_SEPARATION
    })
}

/// Uniform sample of `n` points in a Minkowski region of `R^{1,n_spatial}`,
/// with `inject` placed first (indices `0..inject.len()`).
pub fn sprinkle_minkowski_with(
    n_spatial: usize,
    n: usize,
    region: Region,
    seed: u64,
    inject: &[Vec<f64>],
) -> Result<(EventCloud, CausalSet)> {
    if !matches!(region, Region::Diamond | Region::Box) {
        return Err(Error::arg("region", "expected diamond or box"));
    }
    if inject.len() > n {
        return Err(Error::arg("inject", "more injected points than N"));
    }
    let m = n_spatial + 1;
    let mut coords: Vec<Vec<f64>> = Vec::with_capacity(n);
    for x in inject {
        if x.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: x.len(),
            });
        }
        if !in_region(&region, x) {
            return Err(Error::arg("inject", format!("{x:?} lies outside the region")));
        }
        if too_close(&coords, x) {
            return Err(Error::arg("inject", "duplicate injected point"));
        }
        coords.push(x.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while coords.len() < n {
        let x: Vec<f64> = (0..m).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        if in_region(&region, &x) && !too_close(&coords, &x) {
            coords.push(x);
        }
    }
    let cloud = EventCloud {
        n_spatial,
        coords,
        region,
        seed: Some(seed),
    };
    let cs = cloud.causal_set()?;
    Ok((cloud, cs))
}

pub fn sprinkle_minkowski(n_spatial: usize, n: usize, region: Region, seed: u64) -> Result<(EventCloud, CausalSet)> {
    sprinkle_minkowski_with(n_spatial, n, region, seed, &[])
}

/// Default time range of [`desitter2_sample`].
pub const DESITTER_T_MAX: f64 = 3.0;

/// `n` points of 2D de Sitter space, `t` uniform in `[-3, 3]` and `theta`
/// uniform on the circle. Indices 0 and 1 are the antipodal pair
/// `(0, 0)` and `(0, pi)`, whose futures and pasts are disjoint.
///
/// The order uses the conformal chart `T = gd(t)`: `x <= y` iff the angular
/// gap is at most `T(y) - T(x)`. Since `|T| < pi/2`, no event lies in the
/// future (or past) of both antipodal points.
pub fn desitter2_sample(n: usize, seed: u64) -> Result<(EventCloud, CausalSet)> {
    if n < 2 {
        return Err(Error::arg("N", "need at least the two antipodal events"));
    }
    let region = Region::DeSitter2 {
        t_max: DESITTER_T_MAX,
    };
    let mut coords = vec![vec![0.0, 0.0], vec![0.0, std::f64::consts::PI]];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while coords.len() < n {
        let x = vec![
            rng.gen_range(-DESITTER_T_MAX..=DESITTER_T_MAX),
            rng.gen_range(0.0..std::f64::consts::TAU),
        ];
        if !too_close(&coords, &x) {
            coords.push(x);
        }
    }
    let cloud = EventCloud {
        n_spatial: 1,
        coords,
        region,
        seed: Some(seed),
    };
    let cs = cloud.causal_set()?;
    Ok((cloud, cs))
}

/// `2k` points of `R^{1,2}` whose causal order is the standard example `S_k`.
///
/// `a_i = (0, u_i)` for `i < k` and `b_j = (t, -r u_j)` at index `k + j`,
/// with `u_i` the `k`-th roots of unity. `|a_i - b_j|` is `1 + r` when
/// `i = j` and at most `sqrt(1 + r^2 + 2r cos(2 pi / k))` otherwise; `t` is
/// the midpoint of those two values, so `a_i <= b_j` iff `i != j`.
pub fn cone_standard_example(k: usize, r: f64) -> Result<(EventCloud, CausalSet)> {
    if k < 3 {
        return Err(Error::arg("k", "need k >= 3"));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::arg("r", "need r > 0"));
    }
    let theta = std::f64::consts::TAU / k as f64;
    let largest = 1.0 + r;
    let second = (1.0 + r * r + 2.0 * r * theta.cos()).sqrt();
    if largest - second <= 1e-12 * largest {
        return Err(Error::Degenerate(format!(
            "distance values {largest} and {second} coincide"
        )));
    }
    let t = 0.5 * (largest + second);
    let unit = |i: usize| {
        let a = theta * i as f64;
        (a.cos(), a.sin())
    };
    let mut coords = Vec::with_capacity(2 * k);
    for i in 0..k {
        let (c, s) = unit(i);
        coords.push(vec![0.0, c, s]);
    }
    for j in 0..k {
        let (c, s) = unit(j);
        coords.push(vec![t, -r * c, -r * s]);
    }
    let cloud = EventCloud {
        n_spatial: 2,
        coords,
        region: Region::Explicit,
        seed: None,
    };
    let cs = cloud.causal_set()?;
    Ok((cloud, cs))
}

/// Null coordinates `(t - x, t + x)` of a 2D Minkowski point.
pub fn null_coordinates(x: &[f64]) -> (f64, f64) {
    (x[0] - x[1], x[0] + x[1])
}
