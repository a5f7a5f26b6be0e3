//! Cross-module invariants over randomly generated codes.

use proptest::prelude::*;

use irtower::decode::{cardinality, decode, elements, normalize};
use irtower::limits::quotient_closure;
use irtower::rank::{level_member, rk, TowerConfig};
use irtower::tower::{lift, LeveledCode};
use irtower::{parse, print, Cardinality, Code, Error, Family, RelFamily, Value};

fn leaf() -> impl Strategy<Value = Code> {
    prop_oneof![
        Just(Code::Star),
        Just(Code::Nat),
        Just(Code::Zero),
        (0u64..4).prop_map(Code::fin)
    ]
}

/// Small codes whose Id and Quot carriers and table domains are finite.
fn code() -> impl Strategy<Value = Code> {
    leaf().prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Code::Pi(Box::new(a), Family::constant(b))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Code::Sigma(Box::new(a), Family::constant(b))),
            prop::collection::vec(inner.clone(), 0..3).prop_map(|bs| {
                let dom = Code::fin(bs.len() as u64);
                let fam = Family::table(
                    bs.into_iter()
                        .enumerate()
                        .map(|(i, b)| (Value::Fin(i as u64), b)),
                );
                Code::pi(dom, fam).unwrap()
            }),
            (
                inner.clone(),
                any::<prop::sample::Index>(),
                any::<prop::sample::Index>()
            )
                .prop_filter_map("carrier too large", |(u, i, j)| {
                    let xs = small_elements(&u)?;
                    if xs.is_empty() {
                        return None;
                    }
                    Code::id(u, i.get(&xs).clone(), j.get(&xs).clone()).ok()
                }),
            (
                inner,
                prop::collection::vec(
                    (any::<prop::sample::Index>(), any::<prop::sample::Index>()),
                    0..4
                )
            )
                .prop_filter_map("carrier too large", |(u, picks)| {
                    let xs = small_elements(&u)?;
                    let rel: Vec<(Value, Value)> = if xs.is_empty() {
                        Vec::new()
                    } else {
                        picks
                            .iter()
                            .map(|(i, j)| (i.get(&xs).clone(), j.get(&xs).clone()))
                            .collect()
                    };
                    Code::quot(u, rel.into()).ok()
                }),
        ]
    })
}

fn small_elements(c: &Code) -> Option<Vec<Value>> {
    match cardinality(c) {
        Ok(Cardinality::Finite(n)) if n <= 16 => elements(c).ok(),
        _ => None,
    }
}

proptest! {
    #[test]
    fn print_parse_round_trip(c in code()) {
        prop_assert_eq!(parse(&print(&c)).unwrap(), c);
    }

    #[test]
    fn parts_have_smaller_rank(c in code()) {
        for p in c.parts() {
            prop_assert!(rk(p) < rk(&c));
        }
    }

    #[test]
    fn cardinality_matches_decoding(c in code()) {
        match (cardinality(&c).unwrap(), decode(&c)) {
            (Cardinality::Finite(n), Ok(ext)) => prop_assert_eq!(ext.len(), Some(n as usize)),
            (Cardinality::Infinite, Ok(ext)) => prop_assert_eq!(ext.len(), None),
            // Finite but not enumerable: too many elements, or functions out of Nat.
            (Cardinality::Finite(n), Err(Error::ExtensionTooLarge { .. })) => prop_assert!(n > 1 << 16),
            (Cardinality::Finite(_), Err(Error::NonFinitary { .. })) => prop_assert!(print(&c).contains("Nat")),
            (Cardinality::Finite(_), Err(e)) => prop_assert!(false, "unexpected {e}"),
            (Cardinality::Infinite, Err(_)) => {}
        }
    }

    #[test]
    fn decoded_elements_are_canonical(c in code()) {
        if let Some(xs) = small_elements(&c) {
            prop_assert!(xs.windows(2).all(|w| w[0] < w[1]));
            for x in &xs {
                prop_assert_eq!(&normalize(&c, x).unwrap(), x);
            }
        }
    }

    #[test]
    fn inhabited_agrees_with_cardinality(c in code()) {
        let nonempty = cardinality(&c).unwrap() != Cardinality::Finite(0);
        prop_assert_eq!(irtower::inhabited(&c), nonempty);
    }

    #[test]
    fn levels_are_upward_closed(c in code(), i in 0usize..8) {
        let cfg = TowerConfig::default();
        if level_member(&c, i, &cfg).unwrap() {
            for j in i..cfg.levels() {
                prop_assert!(level_member(&c, j, &cfg).unwrap());
            }
            let base = LeveledCode::new(c.clone(), i, &cfg).unwrap();
            let top = lift(&base, cfg.levels() - 1, &cfg).unwrap();
            prop_assert_eq!(top.code(), &c);
        }
    }

    #[test]
    fn closures_agree(n in 0u64..6, pairs in prop::collection::vec((0u64..6, 0u64..6), 0..8)) {
        let rel: RelFamily = pairs
            .into_iter()
            .filter(|(a, b)| *a < n && *b < n)
            .map(|(a, b)| (Value::Fin(a), Value::Fin(b)))
            .collect::<Vec<_>>()
            .into();
        let closure = quotient_closure(&Code::fin(n), &rel).unwrap();
        prop_assert!(closure.agree());
        prop_assert!(closure.steps <= n as usize);
        let q = Code::quot(Code::fin(n), rel).unwrap();
        prop_assert_eq!(elements(&q).unwrap().len(), closure.partition.len());
    }
}
