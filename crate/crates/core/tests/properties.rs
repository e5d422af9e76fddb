use std::sync::OnceLock;

use cyclic_pf::bijection::{down, pos_crossings, up};
use cyclic_pf::paths::enumerate::enumerate_cpf;
use cyclic_pf::paths::{LabeledPath, PathTuple};
use proptest::prelude::*;

const SLOPES: [(u32, u32); 4] = [(2, 1), (1, 2), (3, 2), (2, 3)];

fn pool(i: usize) -> &'static [LabeledPath] {
    static POOLS: OnceLock<Vec<Vec<LabeledPath>>> = OnceLock::new();
    &POOLS.get_or_init(|| {
        SLOPES
            .iter()
            .map(|&(m, n)| enumerate_cpf(m, n, 3, 3))
            .collect()
    })[i]
}

fn pick(slope: usize, idx: prop::sample::Index) -> LabeledPath {
    idx.get(pool(slope)).clone()
}

fn pd_ld_pos(t: &PathTuple) -> i64 {
    let s = t.stats();
    s.pdinv + s.ldinv + pos_crossings(t).unwrap()
}

proptest! {
    #[test]
    fn up_raises_area_and_down_undoes_it(slope in 0..SLOPES.len(), i: prop::sample::Index) {
        let p = pick(slope, i);
        let u = up(&p);
        prop_assert_eq!(u.area(), p.area() + 1);
        prop_assert!(!u.is_bar());
        prop_assert_eq!(down(&u), p);
    }

    #[test]
    fn reordering_two_components_keeps_pdinv_ldinv_pos(
        slope in 0..SLOPES.len(),
        i: prop::sample::Index,
        j: prop::sample::Index,
    ) {
        let (a, b) = (pick(slope, i), pick(slope, j));
        let ab = PathTuple::new(vec![a.clone(), b.clone()]);
        let ba = PathTuple::new(vec![b, a]);
        prop_assert_eq!(pd_ld_pos(&ab), pd_ld_pos(&ba));
    }

    #[test]
    fn moving_the_last_component_up_to_the_front_keeps_stat(
        slope in 0..SLOPES.len(),
        idx in prop::collection::vec(any::<prop::sample::Index>(), 1..=3),
    ) {
        let comps: Vec<LabeledPath> = idx.into_iter().map(|i| pick(slope, i)).collect();
        let t = PathTuple::new(comps.clone());
        let mut cyc = comps;
        let last = cyc.pop().unwrap();
        cyc.insert(0, up(&last));
        prop_assert_eq!(t.stats().stat, PathTuple::new(cyc).stats().stat);
    }
}
