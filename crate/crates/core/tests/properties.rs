mod support;

use std::collections::HashSet;

use cedlite::erasure::erase;
use cedlite::normalize::{conv, normalize};
use cedlite::signature::Signature;
use cedlite::syntax::{parse_expr, show};
use proptest::prelude::*;
use support::*;

const FUEL: u64 = 5_000;

fn without_atoms(t: &Tm) -> Tm {
    match t {
        Tm::Var(_) => t.clone(),
        Tm::Atom(_) => Tm::Var(0),
        Tm::Lam(b) => lam(without_atoms(b)),
        Tm::App(f, a) => app(without_atoms(f), without_atoms(a)),
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn conv_is_invariant_under_eta_expansion(t in closed_term(), picks in prop::collection::vec(any::<bool>(), 32)) {
        let sig = Signature::new();
        let mut it = picks.into_iter().cycle();
        let expanded = eta_expand_where(&t, &mut || it.next().unwrap_or(false));
        if let Ok(same) = conv(&sig, &to_pure(&t), &to_pure(&expanded), FUEL) {
            prop_assert!(same);
        }
    }

    #[test]
    fn normalization_is_deterministic(t in closed_term()) {
        let p = to_pure(&t);
        let a = normalize(&Signature::new(), &p, FUEL);
        let b = normalize(&Signature::new(), &p, FUEL);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn kernel_agrees_with_applicative_reference(t in closed_term()) {
        let sig = Signature::new();
        let Ok(k) = normalize(&sig, &to_pure(&t), FUEL) else { return Ok(()) };
        if let Some(r) = reference_nf(&t, FUEL) {
            prop_assert_eq!(from_pure(&sig, &k), r);
        }
    }

    #[test]
    fn conv_is_symmetric(a in closed_term(), b in closed_term()) {
        let sig = Signature::new();
        let (pa, pb) = (to_pure(&a), to_pure(&b));
        if let (Ok(x), Ok(y)) = (conv(&sig, &pa, &pb, FUEL), conv(&sig, &pb, &pa, FUEL)) {
            prop_assert_eq!(x, y);
        }
    }

    #[test]
    fn pure_terms_survive_printing_and_erasure(t in closed_term()) {
        let p = to_pure(&without_atoms(&t));
        let text = show(&p.embed());
        let parsed = parse_expr(&text, &HashSet::new()).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(erase(&parsed), p);
    }
}
