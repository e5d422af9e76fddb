use std::collections::BTreeMap;

use cyclic_pf::bijection::*;
use cyclic_pf::symcore::Composition;

fn grid() -> Vec<(u32, u32, usize)> {
    let mut v = Vec::new();
    for (m, n) in [(1, 1), (2, 1), (1, 2), (3, 2), (2, 3)] {
        for k in 1..=2 {
            v.push((m, n, k));
        }
    }
    v
}

#[test]
fn gamma_and_psi_are_inverse() {
    for (m, n, k) in grid() {
        let lab = (k * n as usize) as u32;
        let pfs = enumerate_global_pf(m, n, k, lab);
        let tabs = enumerate_ptableaux(m, n, k, max_global_area(m, n, k), lab);
        assert_eq!(pfs.len(), tabs.len(), "({m},{n}) k={k}");
        for t in &tabs {
            let g = gamma(t).unwrap();
            assert_eq!(psi(&g).unwrap(), *t);
        }
        for g in &pfs {
            assert_eq!(gamma(&psi(g).unwrap()).unwrap(), *g);
        }
    }
}

#[test]
fn touch_matches_ptableau_type() {
    for (m, n, k) in grid() {
        let lab = (k * n as usize) as u32;
        let mut by_touch: BTreeMap<Composition, usize> = BTreeMap::new();
        for g in enumerate_global_pf(m, n, k, lab) {
            *by_touch.entry(touch(&g)).or_default() += 1;
        }
        let tabs = enumerate_ptableaux(m, n, k, max_global_area(m, n, k), lab);
        for alpha in Composition::all(k) {
            let filtered = ptab_filter(&tabs, &alpha);
            assert_eq!(
                filtered.len(),
                by_touch.get(&alpha).copied().unwrap_or(0),
                "({m},{n}) {alpha}"
            );
            for t in filtered {
                assert_eq!(touch(&gamma(&t).unwrap()), alpha);
            }
        }
    }
}

#[test]
fn mix_splices_at_last_crossing() {
    use cyclic_pf::paths::LabeledPath;
    let g = GlobalParkingFunction {
        m: 3,
        n: 2,
        k: 1,
        north_x: vec![0, 1],
        labels: vec![1, 2],
    };
    let tau = LabeledPath::new(3, 2, vec![0, 0], vec![1, 2]);
    let out = mix(&tau, &g).unwrap();
    out.validate().unwrap();
    assert_eq!(out.k, 2);
    assert_eq!(out.area(), g.area() + tau.area());
}

#[test]
fn gamma_preserves_skeleton_and_stat() {
    for (m, n, k) in grid() {
        let lab = (k * n as usize) as u32;
        for t in enumerate_ptableaux(m, n, k, max_global_area(m, n, k), lab) {
            let g = gamma(&t).unwrap();
            let (a, b) = (t.stats(), g.stats());
            assert_eq!(t.skeleton(), g.skeleton());
            assert_eq!(a.pdinv + a.ldinv, b.pdinv + b.ldinv, "({m},{n}) {t:?}");
            assert_eq!(a.stat, b.stat);
            assert_eq!(a.area, b.area);
        }
    }
}

#[test]
fn pf_generating_function_is_symmetric() {
    for (m, n, k) in [(3, 2, 2), (2, 3, 2), (1, 2, 3)] {
        let lab = (k * n as usize) as u32;
        let mut map: BTreeMap<(i64, i64, Vec<u32>), i64> = BTreeMap::new();
        for g in enumerate_global_pf(m, n, k, lab) {
            let mut c = vec![0u32; lab as usize];
            for &l in &g.labels {
                c[l as usize - 1] += 1;
            }
            *map.entry((g.stats().stat, g.area(), c)).or_default() += 1;
        }
        for ((st, ar, c), v) in &map {
            for i in 0..c.len() - 1 {
                let mut c2 = c.clone();
                c2.swap(i, i + 1);
                assert_eq!(map.get(&(*st, *ar, c2)), Some(v));
            }
        }
    }
}
