use proptest::prelude::*;

use ratnc::config12::{from_config12, to_config12};
use ratnc::membership::path_oracle;
use ratnc::parking::{enumerate_park, DEFAULT_PARK_CAP};
use ratnc::partitions::mutually_noncrossing;
use ratnc::paths::enumerate;
use ratnc::{is_member, CoprimePair, DyckPath, LabeledPair, NCParkingFunction, Permutation};

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn coprime() -> impl Strategy<Value = CoprimePair> {
    (1u32..11, 2u32..11)
        .prop_filter("coprime", |&(a, b)| gcd(a, b) == 1)
        .prop_map(|(a, b)| CoprimePair::new(a, b).unwrap())
}

/// A pair and one of its Dyck paths.
fn path() -> impl Strategy<Value = DyckPath> {
    (coprime(), any::<prop::sample::Index>()).prop_map(|(p, i)| {
        let all = enumerate(p).unwrap();
        all[i.index(all.len())].clone()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn laser_map_round_trips(d in path()) {
        let pq = LabeledPair::from_path(&d);
        let back = pq.to_path().unwrap();
        prop_assert_eq!(back.runs(), d.runs());
        prop_assert!(pq.invariant_violations().is_empty());
        prop_assert_eq!(LabeledPair::from_json(&pq.to_json()).unwrap(), pq);
    }

    #[test]
    fn images_are_members(d in path()) {
        let pq = LabeledPair::from_path(&d);
        prop_assert!(is_member(&pq).is_member());
        prop_assert!(pq.p_partition().is_noncrossing());
        prop_assert_eq!(pq.p_partition().kreweras().unwrap(), pq.q_partition());
        prop_assert!(mutually_noncrossing(&pq.p_partition(), &pq.q_partition()));
        prop_assert_eq!(pq.total_rank(), pq.pair().a() as u64);
    }

    #[test]
    fn rotation_and_reflection_stay_inside(d in path(), k in -20i64..20) {
        let pq = LabeledPair::from_path(&d);
        prop_assert_eq!(LabeledPair::from_path(&d.rot_prime()), pq.rotated(-1));
        let r = pq.rotated(k);
        prop_assert!(path_oracle(&r).is_some());
        prop_assert_eq!(r.rotated(-k), pq.clone());
        let f = pq.reflected();
        prop_assert!(path_oracle(&f).is_some());
        prop_assert_eq!(f.reflected(), pq);
    }

    #[test]
    fn rot_prime_has_order_dividing_labels(d in path()) {
        let mut r = d.clone();
        for _ in 0..d.pair().labels() {
            r = r.rot_prime();
        }
        prop_assert_eq!(r, d);
    }

    #[test]
    fn configurations_invert(n in 2u32..10, i in any::<prop::sample::Index>(), k in 0i64..12) {
        let p = CoprimePair::new(n + 1, n).unwrap();
        let all = enumerate(p).unwrap();
        let d = &all[i.index(all.len())];
        let c = to_config12(d).unwrap();
        prop_assert_eq!(&from_config12(&c).unwrap(), d);
        let moved = LabeledPair::from_path(d).rotated(k).to_path().unwrap().to_dyck().unwrap();
        prop_assert_eq!(to_config12(&moved).unwrap(), c.rotated(k));
    }

    #[test]
    fn phi_inverts_and_commutes_with_relabeling(
        (a, b) in (1u32..6, 2u32..6).prop_filter("coprime", |&(a, b)| gcd(a, b) == 1),
        i in any::<prop::sample::Index>(),
        w in any::<prop::sample::Index>(),
        t in 0i64..6,
    ) {
        let p = CoprimePair::new(a, b).unwrap();
        let all = enumerate_park(p, DEFAULT_PARK_CAP).unwrap();
        let pf = &all[i.index(all.len())];
        prop_assert_eq!(&NCParkingFunction::from_phi(&pf.phi()).unwrap(), pf);
        let perms = Permutation::all(a);
        let w = &perms[w.index(perms.len())];
        prop_assert_eq!(pf.act(w, 0).phi(), pf.phi().act(w));
        let moved = pf.act(w, t);
        prop_assert!(all.contains(&moved));
        prop_assert_eq!(moved.act(&w.inverse(), -t), pf.clone());
    }
}
