use crate::error::{Error, Result};
use crate::order::CausalSet;

/// Largest grid or power set the constructors will build.
pub const MAX_ELEMENTS: u128 = 1_000_000;

/// Coordinates of grid element `idx` for a grid of the given shape.
/// The first axis varies fastest.
pub fn grid_coords(shape: &[usize], mut idx: usize) -> Vec<usize> {
    shape
        .iter()
        .map(|&l| {
            let c = idx % l;
            idx /= l;
            c
        })
        .collect()
}

pub fn grid_index(shape: &[usize], coords: &[usize]) -> usize {
    coords
        .iter()
        .zip(shape)
        .rev()
        .fold(0, |acc, (&c, &l)| acc * l + c)
}

/// Product of chains of the given lengths under the componentwise order.
pub fn grid_product_shape(shape: &[usize]) -> Result<CausalSet> {
    if shape.iter().any(|&l| l == 0) {
        return Err(Error::arg("shape", "every factor needs at least one element"));
    }
    let size = shape.iter().map(|&l| l as u128).product::<u128>();
    if size > MAX_ELEMENTS {
        return Err(Error::SizeLimit {
            what: "grid",
            size,
            limit: MAX_ELEMENTS,
        });
    }
    let n = size as usize;
    let mut pairs = Vec::new();
    let mut stride = 1;
    for &l in shape {
        for idx in 0..n {
            if (idx / stride) % l + 1 < l {
                pairs.push((idx, idx + stride));
            }
        }
        stride *= l;
    }
    CausalSet::from_relation_pairs(n, &pairs)
}

/// `{0..L-1}^k` under the product order.
pub fn grid_product(l: usize, k: usize) -> Result<CausalSet> {
    if l < 2 {
        return Err(Error::arg("L", "need L >= 2"));
    }
    if k < 1 {
        return Err(Error::arg("k", "need k >= 1"));
    }
    let size = (l as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if size > MAX_ELEMENTS {
        return Err(Error::SizeLimit {
            what: "grid",
            size,
            limit: MAX_ELEMENTS,
        });
    }
    grid_product_shape(&vec![l; k])
}

/// Subsets of an `s`-element set ordered by inclusion; element `i` is the
/// subset whose bitmask is `i`.
pub fn powerset_order(s: usize) -> Result<CausalSet> {
    if s > 20 {
        return Err(Error::SizeLimit {
            what: "power set",
            size: 1u128 << s.min(127),
            limit: 1 << 20,
        });
    }
    let n = 1usize << s;
    let pairs: Vec<_> = (0..n)
        .flat_map(|a| (0..s).filter(move |&i| a & (1 << i) == 0).map(move |i| (a, a | (1 << i))))
        .collect();
    CausalSet::from_relation_pairs(n, &pairs)
}
