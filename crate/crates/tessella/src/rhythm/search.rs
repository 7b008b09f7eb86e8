//! Complement search over `Z/nZ` and the exhaustive Vuza scan.
//!
//! The search is a depth-first walk that always covers the smallest
//! uncovered residue next: for an exact tiling every complement is reached
//! exactly once, because the residue currently forced determines which of
//! its covering translates belongs to the complement. With the `parallel`
//! feature the top of the tree is expanded into a frontier that rayon maps
//! over; the final sorted list is identical to the sequential run.

use std::collections::BTreeSet;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rhythm::ResidueSet;

/// Largest modulus accepted by default; exact-cover search is exponential.
pub const DEFAULT_SEARCH_BOUND: usize = 40;

/// Masks can hold at most this many residues.
const MASK_LIMIT: usize = 128;

/// What counts as a complement of the motif.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Translates cover every residue exactly once.
    Exact,
    /// Translates cover every residue at least once and no proper subset
    /// of the complement still does.
    MinimalCover,
}

/// All complements of `a` under the default search bound, sorted
/// lexicographically by element list.
pub fn find_complements(a: &ResidueSet, mode: SearchMode) -> Result<Vec<ResidueSet>> {
    find_complements_bounded(a, mode, DEFAULT_SEARCH_BOUND)
}

/// As [`find_complements`] with an explicit modulus bound.
pub fn find_complements_bounded(
    a: &ResidueSet,
    mode: SearchMode,
    bound: usize,
) -> Result<Vec<ResidueSet>> {
    check_input(a, bound)?;
    #[cfg(feature = "parallel")]
    {
        Ok(run_search_par(a, mode))
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok(run_search_seq(a, mode))
    }
}

/// Sequential search entry, kept public for benchmarks and for the
/// determinism contract test against the parallel path.
pub fn complements_seq(a: &ResidueSet, mode: SearchMode, bound: usize) -> Result<Vec<ResidueSet>> {
    check_input(a, bound)?;
    Ok(run_search_seq(a, mode))
}

/// Parallel search entry; results are identical to [`complements_seq`].
#[cfg(feature = "parallel")]
pub fn complements_par(a: &ResidueSet, mode: SearchMode, bound: usize) -> Result<Vec<ResidueSet>> {
    check_input(a, bound)?;
    Ok(run_search_par(a, mode))
}

fn check_input(a: &ResidueSet, bound: usize) -> Result<()> {
    if a.is_empty() {
        return Err(Error::domain("cannot search complements of the empty motif"));
    }
    let n = a.modulus();
    if n > bound.min(MASK_LIMIT) {
        return Err(Error::SearchBound {
            modulus: n,
            bound: bound.min(MASK_LIMIT),
        });
    }
    Ok(())
}

struct Ctx {
    n: usize,
    motif: Vec<usize>,
    /// translates[b] = bitmask of `A + b`
    translates: Vec<u128>,
    full: u128,
}

impl Ctx {
    fn new(a: &ResidueSet) -> Self {
        let n = a.modulus();
        let motif: Vec<usize> = a.elements().to_vec();
        let translates = (0..n)
            .map(|b| {
                motif
                    .iter()
                    .fold(0u128, |m, &e| m | (1u128 << ((e + b) % n)))
            })
            .collect();
        let full = if n == 128 { !0u128 } else { (1u128 << n) - 1 };
        Ctx {
            n,
            motif,
            translates,
            full,
        }
    }

    fn lowest_uncovered(&self, covered: u128) -> usize {
        (!covered & self.full).trailing_zeros() as usize
    }

    /// Offsets whose translate covers residue `r`.
    fn covering_offsets(&self, r: usize) -> impl Iterator<Item = usize> + '_ {
        self.motif.iter().map(move |&a| (r + self.n - a) % self.n)
    }
}

#[derive(Clone)]
struct Node {
    covered: u128,
    chosen: Vec<usize>,
}

fn run_search_seq(a: &ResidueSet, mode: SearchMode) -> Vec<ResidueSet> {
    let ctx = Ctx::new(a);
    if mode == SearchMode::Exact && ctx.n % a.len() != 0 {
        return Vec::new();
    }
    let root = Node {
        covered: 0,
        chosen: Vec::new(),
    };
    let mut found = Vec::new();
    match mode {
        SearchMode::Exact => dfs_exact(&ctx, root, &mut found),
        SearchMode::MinimalCover => {
            let mut seen = BTreeSet::new();
            dfs_cover(&ctx, root, &mut seen);
            found = seen.into_iter().filter(|b| is_minimal(&ctx, b)).collect();
        }
    }
    finish(a.modulus(), found)
}

#[cfg(feature = "parallel")]
fn run_search_par(a: &ResidueSet, mode: SearchMode) -> Vec<ResidueSet> {
    let ctx = Ctx::new(a);
    if mode == SearchMode::Exact && ctx.n % a.len() != 0 {
        return Vec::new();
    }
    // Expand a frontier two levels deep, then search each node independently.
    let mut frontier = vec![Node {
        covered: 0,
        chosen: Vec::new(),
    }];
    for _ in 0..2 {
        let mut next = Vec::new();
        for node in &frontier {
            if node.covered == ctx.full {
                next.push(node.clone());
                continue;
            }
            let r = ctx.lowest_uncovered(node.covered);
            for b in ctx.covering_offsets(r) {
                let t = ctx.translates[b];
                let overlap = t & node.covered != 0;
                match mode {
                    SearchMode::Exact if overlap => continue,
                    SearchMode::MinimalCover if node.chosen.contains(&b) => continue,
                    _ => {}
                }
                let mut chosen = node.chosen.clone();
                chosen.push(b);
                next.push(Node {
                    covered: node.covered | t,
                    chosen,
                });
            }
        }
        frontier = next;
    }
    let found: Vec<Vec<usize>> = match mode {
        SearchMode::Exact => frontier
            .into_par_iter()
            .map(|node| {
                let mut out = Vec::new();
                dfs_exact(&ctx, node, &mut out);
                out
            })
            .reduce(Vec::new, |mut acc, mut v| {
                acc.append(&mut v);
                acc
            }),
        SearchMode::MinimalCover => {
            let merged: BTreeSet<Vec<usize>> = frontier
                .into_par_iter()
                .map(|node| {
                    let mut seen = BTreeSet::new();
                    dfs_cover(&ctx, node, &mut seen);
                    seen
                })
                .reduce(BTreeSet::new, |mut acc, v| {
                    acc.extend(v);
                    acc
                });
            merged.into_iter().filter(|b| is_minimal(&ctx, b)).collect()
        }
    };
    finish(a.modulus(), found)
}

fn dfs_exact(ctx: &Ctx, node: Node, out: &mut Vec<Vec<usize>>) {
    if node.covered == ctx.full {
        out.push(node.chosen);
        return;
    }
    let r = ctx.lowest_uncovered(node.covered);
    for b in ctx.covering_offsets(r) {
        let t = ctx.translates[b];
        if t & node.covered != 0 {
            continue;
        }
        let mut chosen = node.chosen.clone();
        chosen.push(b);
        dfs_exact(
            ctx,
            Node {
                covered: node.covered | t,
                chosen,
            },
            out,
        );
    }
}

fn dfs_cover(ctx: &Ctx, node: Node, seen: &mut BTreeSet<Vec<usize>>) {
    if node.covered == ctx.full {
        let mut b = node.chosen;
        b.sort_unstable();
        seen.insert(b);
        return;
    }
    let r = ctx.lowest_uncovered(node.covered);
    for b in ctx.covering_offsets(r) {
        if node.chosen.contains(&b) {
            continue;
        }
        let mut chosen = node.chosen.clone();
        chosen.push(b);
        dfs_cover(
            ctx,
            Node {
                covered: node.covered | ctx.translates[b],
                chosen,
            },
            seen,
        );
    }
}

/// A cover is minimal iff dropping any single offset breaks full support.
fn is_minimal(ctx: &Ctx, b: &[usize]) -> bool {
    b.iter().all(|&skip| {
        let cov = b
            .iter()
            .filter(|&&x| x != skip)
            .fold(0u128, |m, &x| m | ctx.translates[x]);
        cov != ctx.full
    })
}

fn finish(modulus: usize, mut found: Vec<Vec<usize>>) -> Vec<ResidueSet> {
    for b in &mut found {
        b.sort_unstable();
    }
    found.sort();
    found.dedup();
    found
        .into_iter()
        .map(|b| ResidueSet::from_mask(modulus, b.iter().fold(0u128, |m, &e| m | (1 << e))))
        .collect()
}

/// Keeps only the lexicographically least translate of each translation
/// class, preserving sorted order.
pub fn canonical_translates(sets: &[ResidueSet]) -> Vec<ResidueSet> {
    let mut out: Vec<ResidueSet> = Vec::new();
    let mut seen = BTreeSet::new();
    for s in sets {
        let n = s.modulus();
        let canon = (0..n)
            .map(|t| s.translate(t).expect("t < n"))
            .min()
            .expect("non-empty set");
        if seen.insert(canon.clone()) {
            out.push(canon);
        }
    }
    out.sort();
    out
}

/// Exhaustively enumerates Vuza canons of `Z/nZ`: exact tilings `(A, B)`
/// with both factors aperiodic. Motifs are normalized to contain 0; every
/// exact tiling is a translate of one of that form, and both the tiling
/// property and periodicity are translation invariant.
pub fn vuza_canons(n: usize, bound: usize) -> Result<Vec<(ResidueSet, ResidueSet)>> {
    if n == 0 {
        return Err(Error::domain("modulus must be positive"));
    }
    if n > bound.min(MASK_LIMIT) {
        return Err(Error::SearchBound {
            modulus: n,
            bound: bound.min(MASK_LIMIT),
        });
    }
    let motifs = motifs_containing_zero(n);
    #[cfg(feature = "parallel")]
    let iter = motifs.into_par_iter();
    #[cfg(not(feature = "parallel"))]
    let iter = motifs.into_iter();

    let mut pairs: Vec<(ResidueSet, ResidueSet)> = iter
        .map(|a| -> Result<Vec<(ResidueSet, ResidueSet)>> {
            if a.period()?.is_some() {
                return Ok(Vec::new());
            }
            let mut hits = Vec::new();
            for b in complements_seq(&a, SearchMode::Exact, bound)? {
                if b.period()?.is_none() {
                    hits.push((a.clone(), b));
                }
            }
            Ok(hits)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    pairs.sort();
    Ok(pairs)
}

/// All motifs of `Z/nZ` that contain 0 and whose size divides `n`.
fn motifs_containing_zero(n: usize) -> Vec<ResidueSet> {
    let mut out = Vec::new();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        // Choose the remaining d-1 elements from {1, .., n-1} via Gosper's
        // hack over n-1 bits.
        let k = d - 1;
        if k == 0 {
            out.push(ResidueSet::from_mask(n, 1));
            continue;
        }
        if k > n - 1 {
            continue;
        }
        let limit: u128 = 1u128 << (n - 1);
        let mut comb: u128 = (1u128 << k) - 1;
        while comb < limit {
            out.push(ResidueSet::from_mask(n, (comb << 1) | 1));
            // Gosper: next bit pattern with the same popcount.
            let c = comb & comb.wrapping_neg();
            let r = comb + c;
            comb = (((r ^ comb) >> 2) / c) | r;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rhythm::is_exact_tiling;

    fn rs(n: usize, e: &[i64]) -> ResidueSet {
        ResidueSet::new(n, e.iter().copied()).unwrap()
    }

    /// Brute force over all subsets; independent of the DFS path.
    fn brute_force_exact(a: &ResidueSet) -> Vec<ResidueSet> {
        let n = a.modulus();
        assert!(n <= 20);
        let mut out = Vec::new();
        for mask in 1u64..(1 << n) {
            let mut counts = vec![0u8; n];
            let mut ok = true;
            'outer: for b in 0..n {
                if mask & (1 << b) == 0 {
                    continue;
                }
                for &e in a.elements() {
                    let r = (e + b) % n;
                    counts[r] += 1;
                    if counts[r] > 1 {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            if ok && counts.iter().all(|&c| c == 1) {
                out.push(ResidueSet::from_mask(n, mask as u128));
            }
        }
        out.sort();
        out
    }

    #[test]
    fn exact_complements_of_triple_in_z12() {
        let found = find_complements(&rs(12, &[0, 4, 8]), SearchMode::Exact).unwrap();
        assert!(found.contains(&rs(12, &[0, 1, 2, 3])));
        // {0,4,8}+b covers the residue class b mod 4, so a complement picks
        // one representative per class: 3^4 choices.
        assert_eq!(found.len(), 81);
        assert_eq!(found, brute_force_exact(&rs(12, &[0, 4, 8])));
    }

    #[test]
    fn exact_complements_of_domino_in_z4() {
        let found = find_complements(&rs(4, &[0, 1]), SearchMode::Exact).unwrap();
        assert_eq!(found, vec![rs(4, &[0, 2]), rs(4, &[1, 3])]);
        assert_eq!(found, brute_force_exact(&rs(4, &[0, 1])));
        assert_eq!(canonical_translates(&found), vec![rs(4, &[0, 2])]);
    }

    #[test]
    fn exact_complements_of_singleton() {
        let found = find_complements(&rs(3, &[0]), SearchMode::Exact).unwrap();
        assert_eq!(found, vec![rs(3, &[0, 1, 2])]);
    }

    #[test]
    fn exact_requires_divisibility() {
        let found = find_complements(&rs(4, &[0, 1, 2]), SearchMode::Exact).unwrap();
        assert!(found.is_empty());
    }

    #[test]
    fn every_result_is_an_exact_tiling() {
        for motif in [rs(12, &[0, 4, 8]), rs(12, &[0, 1, 6, 7]), rs(10, &[0, 3])] {
            for b in find_complements(&motif, SearchMode::Exact).unwrap() {
                assert!(is_exact_tiling(&motif, &b).unwrap(), "A={motif} B={b}");
            }
        }
    }

    #[test]
    fn minimal_covers_of_domino_in_z4() {
        let found = find_complements(&rs(4, &[0, 2]), SearchMode::MinimalCover).unwrap();
        assert_eq!(
            found,
            vec![
                rs(4, &[0, 1]),
                rs(4, &[0, 3]),
                rs(4, &[1, 2]),
                rs(4, &[2, 3]),
            ]
        );
    }

    #[test]
    fn minimal_covers_of_triple_in_z4() {
        let found = find_complements(&rs(4, &[0, 1, 2]), SearchMode::MinimalCover).unwrap();
        // Every 2-subset of offsets covers, no singleton does.
        assert_eq!(found.len(), 6);
        for b in &found {
            assert_eq!(b.len(), 2);
        }
    }

    #[test]
    fn search_bound_is_enforced() {
        let a = rs(41, &[0]);
        match find_complements(&a, SearchMode::Exact) {
            Err(Error::SearchBound { modulus: 41, bound: 40 }) => {}
            other => panic!("expected SearchBound, got {other:?}"),
        }
        assert!(find_complements_bounded(&rs(41, &[0]), SearchMode::Exact, 60).is_ok());
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_matches_sequential() {
        for motif in [
            rs(12, &[0, 4, 8]),
            rs(12, &[0, 1, 6, 7]),
            rs(16, &[0, 1, 2, 3]),
            rs(9, &[0, 1, 5]),
        ] {
            for mode in [SearchMode::Exact, SearchMode::MinimalCover] {
                let seq = complements_seq(&motif, mode, DEFAULT_SEARCH_BOUND).unwrap();
                let par = complements_par(&motif, mode, DEFAULT_SEARCH_BOUND).unwrap();
                assert_eq!(seq, par, "A={motif} mode={mode:?}");
            }
        }
    }

    #[test]
    fn vuza_scan_small_moduli() {
        for n in 2..=12 {
            assert!(vuza_canons(n, DEFAULT_SEARCH_BOUND).unwrap().is_empty(), "n={n}");
        }
    }

    #[test]
    fn motif_enumeration_counts() {
        // n=6: d in {1,2,3,6}: C(5,0)+C(5,1)+C(5,2)+C(5,5) = 1+5+10+1
        assert_eq!(motifs_containing_zero(6).len(), 17);
    }
}
