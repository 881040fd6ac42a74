//! βηδ-normalization of erased terms and the conversion check built on it.

use thiserror::Error;

use crate::erasure::{Pure, RcPure};
use crate::signature::Signature;

pub const DEFAULT_FUEL: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormError {
    #[error("normalization ran out of fuel after {steps} steps")]
    OutOfFuel { steps: u64, partial: RcPure },
}

/// Normal-order reducer. Each β step and each definition unfolding costs one
/// unit of fuel.
pub struct Normalizer<'s> {
    sig: &'s Signature,
    limit: u64,
    steps: u64,
    exhausted: bool,
}

impl<'s> Normalizer<'s> {
    pub fn new(sig: &'s Signature, fuel: u64) -> Self {
        Normalizer {
            sig,
            limit: fuel,
            steps: 0,
            exhausted: false,
        }
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn run(&mut self, t: &RcPure) -> Result<RcPure, NormError> {
        let r = self.nf(t);
        if self.exhausted {
            Err(NormError::OutOfFuel {
                steps: self.steps,
                partial: r,
            })
        } else {
            Ok(r)
        }
    }

    fn tick(&mut self) -> bool {
        if self.steps >= self.limit {
            self.exhausted = true;
            false
        } else {
            self.steps += 1;
            true
        }
    }

    fn def_nf(&mut self, name: &str) -> Option<RcPure> {
        let def = self.sig.get(name)?;
        if let Some(nf) = def.nf.get() {
            return Some(nf.clone());
        }
        let mut sub = Normalizer::new(self.sig, self.limit);
        let r = sub.nf(&def.erased);
        if sub.exhausted {
            // unfold the raw body; the use site may still have a normal form
            Some(def.erased.clone())
        } else {
            Some(def.nf.get_or_init(|| r).clone())
        }
    }

    fn nf(&mut self, t: &RcPure) -> RcPure {
        let mut head = t.clone();
        let mut args: Vec<RcPure> = Vec::new();
        loop {
            match &*head {
                Pure::App(f, a) => {
                    args.push(a.clone());
                    head = f.clone();
                }
                Pure::Lam(_, body) if !args.is_empty() => {
                    if !self.tick() {
                        break;
                    }
                    let a = args.pop().unwrap();
                    head = body.subst_top(&a);
                }
                Pure::Ref(name) if self.sig.get(name).is_some() => {
                    if !self.tick() {
                        break;
                    }
                    head = self.def_nf(name).unwrap();
                }
                _ => break,
            }
        }
        let mut out = match &*head {
            Pure::Lam(h, body) if args.is_empty() => eta(Pure::Lam(h.clone(), self.nf(body)).rc()),
            _ => head,
        };
        while let Some(a) = args.pop() {
            out = Pure::app(out, self.nf(&a));
        }
        out
    }
}

/// Contract `λ x . f x` to `f` when `x` is not free in `f`.
fn eta(t: RcPure) -> RcPure {
    if let Pure::Lam(_, body) = &*t {
        if let Pure::App(f, a) = &**body {
            if **a == Pure::Bound(0) && !f.has_bound(0) {
                return f.shift(-1, 0);
            }
        }
    }
    t
}

pub fn normalize(sig: &Signature, t: &RcPure, fuel: u64) -> Result<RcPure, NormError> {
    Normalizer::new(sig, fuel).run(t)
}

/// βηδ-convertibility, decided by comparing normal forms.
pub fn conv(sig: &Signature, a: &RcPure, b: &RcPure, fuel: u64) -> Result<bool, NormError> {
    if a == b {
        return Ok(true);
    }
    Ok(normalize(sig, a, fuel)? == normalize(sig, b, fuel)?)
}

pub fn is_identity(sig: &Signature, t: &RcPure, fuel: u64) -> Result<bool, NormError> {
    conv(sig, t, &Pure::identity(), fuel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::erasure::erase;

    fn pure(sig: &Signature, src: &str) -> RcPure {
        erase(&sig.parse_expr(src).unwrap())
    }

    #[test]
    fn beta_and_eta() {
        let sig = Signature::new();
        let t = pure(&sig, "(λ f . λ x . f x) (λ y . y)");
        assert_eq!(normalize(&sig, &t, 100).unwrap(), Pure::identity());
        let k = pure(&sig, "λ a . λ b . (λ x . λ y . x) a b");
        assert_eq!(
            normalize(&sig, &k, 100).unwrap().to_string(),
            "λ a . λ b . a"
        );
    }

    #[test]
    fn definitions_unfold() {
        let sig = Signature::parse(
            "id ◂ ★ = λ x . x .\n\
             twice ◂ ★ = λ f . λ x . f (f x) .",
        )
        .unwrap();
        let t = pure(&sig, "twice id");
        assert!(is_identity(&sig, &t, 100).unwrap());
        assert!(sig.get("twice").unwrap().nf.get().is_some());
    }

    #[test]
    fn fuel_runs_out() {
        let sig = Signature::new();
        let omega = pure(&sig, "(λ x . x x) (λ x . x x)");
        match normalize(&sig, &omega, 50) {
            Err(NormError::OutOfFuel { steps, .. }) => assert_eq!(steps, 50),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn discarded_divergence_is_harmless() {
        let sig = Signature::parse(
            "w ◂ ★ = λ x . x x .\n\
             loop ◂ ★ = λ k . k (w w) .",
        )
        .unwrap();
        let t = pure(&sig, "loop (λ _ . λ z . z)");
        assert!(is_identity(&sig, &t, 1000).unwrap());
    }
}
