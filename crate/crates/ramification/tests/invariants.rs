use proptest::prelude::*;
use ramification::catalog::groups_up_to_16;
use ramification::subgroup::{all_subgroups, chief_series};
use ramification::{
    canonical_tower, herbrand_galois, herbrand_on_subgroup, herbrand_relative, make_filtration_inertia, verify_tower,
    FiniteGroup,
};
use valuation_core::{rat, LogValue, Prime};

/// Catalog p-groups of order > 1 with their prime.
fn p_groups() -> Vec<(FiniteGroup, Prime)> {
    groups_up_to_16()
        .unwrap()
        .into_iter()
        .filter_map(|(_, g)| {
            let n = g.order() as u64;
            let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
            let p = Prime::new(p).unwrap();
            p.log_exact(n).map(|_| (g, p))
        })
        .collect()
}

/// Group, chief series and subgroup picks, plus strictly decreasing `v` values
/// (numerators over 6) for the filtration jumps.
fn case() -> impl Strategy<Value = (usize, usize, usize, Vec<i64>)> {
    (0usize..1000, 0usize..1000, 0usize..1000, proptest::collection::btree_set(0i64..40, 4))
        .prop_map(|(g, s, h, vs)| (g, s, h, vs.into_iter().rev().collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relative_herbrand_composes_back(( gi, si, hi, vs) in case()) {
        let groups = p_groups();
        let (g, p) = &groups[gi % groups.len()];
        let all = chief_series(g);
        let series = &all[si % all.len()];
        let values: Vec<LogValue> = vs.iter().take(series.len() - 1).map(|n| LogValue::from_v(rat(*n, 6))).collect();
        prop_assume!(values.len() == series.len() - 1);
        let i = make_filtration_inertia(g, series, &values).unwrap();
        let subgroups = all_subgroups(g);
        let h = &subgroups[hi % subgroups.len()];

        let total = herbrand_galois(g, &i, *p).unwrap();
        // elements with inertia value 1 sit above every break
        let top_is_one = values.last().is_some_and(|x| *x == LogValue::one());
        let below = if top_is_one { series[series.len() - 2].len() } else { g.order() };
        prop_assert_eq!(total.degree(), below as u64);
        let on_h = herbrand_on_subgroup(g, &i, h, *p).unwrap();
        let relative = herbrand_relative(g, &i, h, *p).unwrap();
        prop_assert_eq!(relative.compose(&on_h).unwrap(), total);
        let tower = canonical_tower(g, &i, h, *p).unwrap();
        prop_assert!(verify_tower(&tower, &relative).passed());
    }
}
