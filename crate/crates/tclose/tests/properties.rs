//! Property-based checks: partition laws for equivalence classes,
//! normalization of built distributions, metric axioms for both distances,
//! and exact agreement of every EMD route with the reference solver.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use tclose::distribution::{
    build_distribution, build_domain, Distribution, OrderingPolicy, ValueMultiset,
};
use tclose::emd::{
    build_transport_plan, emd_definition, emd_efficient, emd_variational,
};
use tclose::reference::mincost_transport;
use tclose::table::{parse_csv, partition_classes, MissingValuePolicy, Schema};
use tclose::Rational;

fn rational(n: u32, d: u64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn dist_from_counts(counts: &[u32]) -> Distribution {
    let total: u64 = counts.iter().map(|&c| c as u64).sum();
    Distribution::from_probs(counts.iter().map(|&c| rational(c, total)).collect())
}

fn counts(m: usize, max: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max, m)
        .prop_filter("at least one record", |v| v.iter().any(|&c| c > 0))
}

fn aligned_pair(m_range: std::ops::RangeInclusive<usize>, max: u32)
    -> impl Strategy<Value = (Distribution, Distribution)>
{
    m_range.prop_flat_map(move |m| {
        (counts(m, max), counts(m, max))
            .prop_map(|(a, b)| (dist_from_counts(&a), dist_from_counts(&b)))
    })
}

fn aligned_triple() -> impl Strategy<Value = (Distribution, Distribution, Distribution)> {
    (2usize..=12).prop_flat_map(|m| {
        (counts(m, 5), counts(m, 5), counts(m, 5)).prop_map(|(a, b, c)| {
            (
                dist_from_counts(&a),
                dist_from_counts(&b),
                dist_from_counts(&c),
            )
        })
    })
}

fn small_table() -> impl Strategy<Value = (Vec<String>, Vec<String>)> {
    let zone = prop::sample::select(vec!["1A", "2B", "3C", "4D"]);
    let incident = prop::sample::select(vec!["fire", "theft", "flood"]);
    prop::collection::vec((zone, incident), 1..30).prop_map(|rows| {
        rows.into_iter()
            .map(|(z, i)| (z.to_string(), i.to_string()))
            .unzip()
    })
}

fn table_schema() -> Schema {
    Schema::from_json(
        r#"{"attributes": [
            {"name": "Zone", "role": "quasi"},
            {"name": "Incident", "role": "sensitive_categorical"}
        ]}"#,
    )
    .unwrap()
}

proptest! {
    #[test]
    fn classes_partition_the_table((zones, incidents) in small_table()) {
        let mut csv = String::from("Zone,Incident\n");
        for (z, i) in zones.iter().zip(&incidents) {
            csv.push_str(&format!("{z},{i}\n"));
        }
        let table = parse_csv(csv.as_bytes(), &table_schema(), MissingValuePolicy::Error).unwrap();
        let classes = partition_classes(&table);

        let mut all: Vec<usize> = classes.iter().flat_map(|c| c.row_indices.clone()).collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..zones.len()).collect::<Vec<_>>());

        // QI agreement: every member row carries the class key.
        for class in &classes {
            for &r in &class.row_indices {
                prop_assert_eq!(&table.rows()[r][0], &class.qi_key[0]);
            }
        }

        // Determinism.
        prop_assert_eq!(classes, partition_classes(&table));
    }

    #[test]
    fn built_distributions_are_normalized(values in prop::collection::vec(0u8..6, 1..40)) {
        let labels: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        let global = ValueMultiset::new(labels);
        for policy in [
            OrderingPolicy::ValueAscending,
            OrderingPolicy::FrequencyDescending,
            OrderingPolicy::FirstAppearance,
        ] {
            let domain = build_domain(&global, policy).unwrap();
            // Totality: each distinct value appears exactly once.
            let mut sorted = domain.values().to_vec();
            sorted.sort();
            sorted.dedup();
            prop_assert_eq!(sorted.len(), domain.len());

            let q = build_distribution(&global, &domain).unwrap();
            prop_assert!(q.total().is_one());
            // Alignment: the global distribution has no holes.
            prop_assert!(q.probs().iter().all(|p| !p.is_zero()));
        }
    }

    #[test]
    fn class_distributions_zero_extend(
        values in prop::collection::vec(0u8..6, 2..40),
        keep in prop::collection::vec(any::<bool>(), 2..40),
    ) {
        let labels: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        let global = ValueMultiset::new(labels.clone());
        let domain = build_domain(&global, OrderingPolicy::FirstAppearance).unwrap();

        let subset: Vec<String> = labels
            .iter()
            .zip(keep.iter().cycle())
            .filter(|(_, &k)| k)
            .map(|(v, _)| v.clone())
            .collect();
        prop_assume!(!subset.is_empty());

        let p = build_distribution(&ValueMultiset::new(subset.clone()), &domain).unwrap();
        prop_assert!(p.total().is_one());
        for (value, prob) in domain.values().iter().zip(p.probs()) {
            if !subset.contains(value) {
                prop_assert!(prob.is_zero());
            }
        }
    }

    #[test]
    fn three_routes_agree_exactly((p, q) in aligned_pair(2..=64, 9)) {
        let a = emd_definition(&p, &q).unwrap();
        let b = emd_efficient(&p, &q).unwrap();
        let plan = build_transport_plan(&p, &q).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(&a, &plan.total_cost);
    }

    #[test]
    fn routes_match_the_reference_solver((p, q) in aligned_pair(2..=8, 4)) {
        let (_, oracle_cost) = mincost_transport(&p, &q).unwrap();
        prop_assert_eq!(&oracle_cost, &emd_definition(&p, &q).unwrap());
        prop_assert_eq!(&oracle_cost, &build_transport_plan(&p, &q).unwrap().total_cost);
    }

    #[test]
    fn emd_is_symmetric_and_bounded((p, q) in aligned_pair(2..=32, 6)) {
        let d = emd_efficient(&p, &q).unwrap();
        prop_assert_eq!(&d, &emd_efficient(&q, &p).unwrap());
        prop_assert!(d >= Rational::zero());
        prop_assert!(d <= Rational::one());

        let v = emd_variational(&p, &q).unwrap();
        prop_assert_eq!(&v, &emd_variational(&q, &p).unwrap());
        prop_assert!(v >= Rational::zero());
        prop_assert!(v <= Rational::one());
    }

    #[test]
    fn zero_distance_means_equal((p, q) in aligned_pair(2..=32, 6)) {
        let d = emd_efficient(&p, &q).unwrap();
        prop_assert_eq!(d.is_zero(), p == q);
        let v = emd_variational(&p, &q).unwrap();
        prop_assert_eq!(v.is_zero(), p == q);
    }

    #[test]
    fn triangle_inequality_holds((p, q, r) in aligned_triple()) {
        let pq = emd_efficient(&p, &q).unwrap();
        let qr = emd_efficient(&q, &r).unwrap();
        let pr = emd_efficient(&p, &r).unwrap();
        prop_assert!(pr <= pq.clone() + qr.clone());

        let vpq = emd_variational(&p, &q).unwrap();
        let vqr = emd_variational(&q, &r).unwrap();
        let vpr = emd_variational(&p, &r).unwrap();
        prop_assert!(vpr <= vpq + vqr);
    }

    #[test]
    fn transport_plans_conserve_mass((p, q) in aligned_pair(2..=32, 6)) {
        let plan = build_transport_plan(&p, &q).unwrap();
        prop_assert_eq!(plan.apply_to(&p), q);
        // Moves never carry zero or negative mass and never stay in place.
        for mv in &plan.moves {
            prop_assert!(mv.mass > Rational::zero());
            prop_assert!(mv.from_index != mv.to_index);
        }
    }
}
