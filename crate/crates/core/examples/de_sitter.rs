//! Searches for an order embedding of a de Sitter sample fragment into a
//! 1+1 Minkowski diamond sprinkling that keeps the antipodal pair's futures
//! disjoint.
//!
//! The fragment is the two antipodal events plus the earliest few events of
//! each future. The pair's images are restricted to sprinkling pairs whose
//! futures are disjoint within the sample.
//!
//! Usage: `cargo run --release -p ordim --example de_sitter -- [N] [seed] [per_side]`

use ordim::bitset::BitSet;
use ordim::embed::search_map;
use ordim::generators::{desitter2_sample, sprinkle_minkowski, Region};
use ordim::EmbedMode;

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("numeric argument")).collect();
    let n = *args.first().unwrap_or(&200) as usize;
    let seed = *args.get(1).unwrap_or(&0);
    let per_side = *args.get(2).unwrap_or(&3) as usize;

    let (ds_cloud, ds) = desitter2_sample(n, seed).expect("de Sitter sample");
    let mut elems = vec![0, 1];
    for root in [0, 1] {
        let mut future: Vec<usize> = ds.up(root).iter().filter(|&x| x != root).collect();
        future.sort_by(|&a, &b| ds_cloud.coords[a][0].total_cmp(&ds_cloud.coords[b][0]));
        elems.extend(future.into_iter().take(per_side));
    }
    let src = ds.induced(&elems).expect("fragment");

    let (_, dst) = sprinkle_minkowski(1, n, Region::Diamond, seed).expect("sprinkling");
    let mut pairs = Vec::new();
    for u in 0..dst.len() {
        for v in 0..dst.len() {
            if u != v && !dst.comparable(u, v) && dst.up(u).is_disjoint(dst.up(v)) {
                pairs.push((u, v));
            }
        }
    }

    let (mut yes, mut nodes) = (0usize, 0u64);
    for &(u, v) in &pairs {
        let mut allowed = vec![BitSet::full(dst.len()); src.len()];
        allowed[0] = BitSet::from_indices(dst.len(), [u]);
        allowed[1] = BitSet::from_indices(dst.len(), [v]);
        let out = search_map(&src, &dst, EmbedMode::Embedding, 10_000_000, Some(&allowed));
        nodes += out.nodes();
        if out.is_yes() {
            yes += 1;
        }
    }
    println!("fragment: {} events ({} future events per antipode)", src.len(), per_side);
    println!("sprinkling: {} events, {} ordered pairs with disjoint futures", dst.len(), pairs.len());
    println!("pairs admitting an embedding: {yes} ({nodes} search nodes)");
}
