use std::time::Instant;
use tessella::rhythm::{search, ResidueSet, SearchMode};

fn main() {
    for (n, motif) in [
        (36usize, vec![0i64, 3, 6, 12]),
        (36, vec![0, 1, 5, 11]),
        (40, vec![0, 1, 2, 3, 4]),
        (30, vec![0, 2, 7]),
        (24, vec![0, 1, 5]),
        (48, vec![0, 2, 9, 11]),
    ] {
        let a = ResidueSet::new(n, motif.clone()).unwrap();
        let t0 = Instant::now();
        let seq = search::complements_seq(&a, SearchMode::Exact, 64).unwrap();
        let t_seq = t0.elapsed();
        let t0 = Instant::now();
        let par = search::complements_par(&a, SearchMode::Exact, 64).unwrap();
        let t_par = t0.elapsed();
        assert_eq!(seq, par);
        println!("n={n:2} A={motif:?}: {} results, seq {t_seq:?}, par {t_par:?}", seq.len());
    }
    // cover mode
    for (n, motif) in [(12usize, vec![0i64, 1, 3]), (16, vec![0, 2, 3])] {
        let a = ResidueSet::new(n, motif.clone()).unwrap();
        let t0 = Instant::now();
        let seq = search::complements_seq(&a, SearchMode::MinimalCover, 64).unwrap();
        let t_seq = t0.elapsed();
        println!("cover n={n} A={motif:?}: {} results, seq {t_seq:?}", seq.len());
    }
    // vuza scans
    for n in [16usize, 18, 20] {
        let t0 = Instant::now();
        let v = search::vuza_canons(n, 64).unwrap();
        println!("vuza n={n}: {} pairs, {:?}", v.len(), t0.elapsed());
    }
}
