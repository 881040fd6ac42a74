//! Erasure of annotated expressions to untyped lambda terms.

use std::fmt;
use std::sync::Arc;

use crate::syntax::printer::default_free_name;
use crate::syntax::{Charset, Expr, FreeId, Hint, RcExpr};

pub type RcPure = Arc<Pure>;

/// Untyped lambda terms with de Bruijn indices. Equality is α-equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Pure {
    Bound(usize),
    Free(FreeId),
    Ref(Arc<str>),
    Lam(Hint, RcPure),
    App(RcPure, RcPure),
}

impl Pure {
    pub fn rc(self) -> RcPure {
        Arc::new(self)
    }

    pub fn lam(name: &str, body: RcPure) -> RcPure {
        Pure::Lam(Hint::new(name), body).rc()
    }

    pub fn app(f: RcPure, a: RcPure) -> RcPure {
        Pure::App(f, a).rc()
    }

    /// `λ x . x`
    pub fn identity() -> RcPure {
        Pure::lam("x", Pure::Bound(0).rc())
    }

    pub fn has_free(&self, id: FreeId) -> bool {
        match self {
            Pure::Free(x) => *x == id,
            Pure::Bound(_) | Pure::Ref(_) => false,
            Pure::Lam(_, b) => b.has_free(id),
            Pure::App(f, a) => f.has_free(id) || a.has_free(id),
        }
    }

    pub fn has_bound(&self, index: usize) -> bool {
        match self {
            Pure::Bound(i) => *i == index,
            Pure::Free(_) | Pure::Ref(_) => false,
            Pure::Lam(_, b) => b.has_bound(index + 1),
            Pure::App(f, a) => f.has_bound(index) || a.has_bound(index),
        }
    }

    pub fn mentions_ref(&self) -> bool {
        match self {
            Pure::Ref(_) => true,
            Pure::Bound(_) | Pure::Free(_) => false,
            Pure::Lam(_, b) => b.mentions_ref(),
            Pure::App(f, a) => f.mentions_ref() || a.mentions_ref(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Pure::Bound(_) | Pure::Free(_) | Pure::Ref(_) => 1,
            Pure::Lam(_, b) => 1 + b.size(),
            Pure::App(f, a) => 1 + f.size() + a.size(),
        }
    }

    /// Add `by` to every bound index at or above `cutoff`.
    pub fn shift(self: &RcPure, by: isize, cutoff: usize) -> RcPure {
        match &**self {
            Pure::Bound(i) if *i >= cutoff => Pure::Bound((*i as isize + by) as usize).rc(),
            Pure::Bound(_) | Pure::Free(_) | Pure::Ref(_) => self.clone(),
            Pure::Lam(h, b) => Pure::Lam(h.clone(), b.shift(by, cutoff + 1)).rc(),
            Pure::App(f, a) => Pure::app(f.shift(by, cutoff), a.shift(by, cutoff)),
        }
    }

    /// Substitute `arg` for index 0 and lower the remaining indices.
    pub fn subst_top(self: &RcPure, arg: &RcPure) -> RcPure {
        self.subst_at(0, arg)
    }

    fn subst_at(self: &RcPure, depth: usize, arg: &RcPure) -> RcPure {
        match &**self {
            Pure::Bound(i) if *i == depth => arg.shift(depth as isize, 0),
            Pure::Bound(i) if *i > depth => Pure::Bound(i - 1).rc(),
            Pure::Bound(_) | Pure::Free(_) | Pure::Ref(_) => self.clone(),
            Pure::Lam(h, b) => Pure::Lam(h.clone(), b.subst_at(depth + 1, arg)).rc(),
            Pure::App(f, a) => Pure::app(f.subst_at(depth, arg), a.subst_at(depth, arg)),
        }
    }

    /// Replace context variable `id` by `value` (locally closed).
    pub fn replace_free(self: &RcPure, id: FreeId, value: &RcPure) -> RcPure {
        match &**self {
            Pure::Free(x) if *x == id => value.clone(),
            Pure::Bound(_) | Pure::Free(_) | Pure::Ref(_) => self.clone(),
            Pure::Lam(h, b) => Pure::Lam(h.clone(), b.replace_free(id, value)).rc(),
            Pure::App(f, a) => Pure::app(f.replace_free(id, value), a.replace_free(id, value)),
        }
    }

    /// View as an (unannotated) expression.
    pub fn embed(&self) -> RcExpr {
        match self {
            Pure::Bound(i) => Expr::Bound(*i).rc(),
            Pure::Free(x) => Expr::Free(*x).rc(),
            Pure::Ref(r) => Expr::Ref(r.clone()).rc(),
            Pure::Lam(h, b) => Expr::Lam {
                name: h.clone(),
                ann: None,
                body: b.embed(),
            }
            .rc(),
            Pure::App(f, a) => Expr::app(f.embed(), a.embed()),
        }
    }

    pub fn display(&self, charset: Charset) -> String {
        crate::syntax::Printer::new(charset, &default_free_name).expr(&self.embed())
    }
}

impl fmt::Display for Pure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(Charset::Unicode))
    }
}

#[derive(Clone, Copy)]
enum Slot {
    /// Survives erasure; the value is its pure binding level.
    Kept(usize),
    Dropped,
}

/// Erase an annotated term: types, erased arguments, erased abstractions
/// and proof constructs disappear.
pub fn erase(e: &Expr) -> RcPure {
    let mut env = Vec::new();
    go(e, &mut env, 0)
}

/// Whether context variable `id` survives in the erasure of `e`.
pub fn free_in_erasure(id: FreeId, e: &Expr) -> bool {
    erase(e).has_free(id)
}

fn go(e: &Expr, env: &mut Vec<Slot>, depth: usize) -> RcPure {
    match e {
        Expr::Bound(i) => match env.len().checked_sub(i + 1).map(|k| env[k]) {
            Some(Slot::Kept(level)) => Pure::Bound(depth - 1 - level).rc(),
            Some(Slot::Dropped) => Pure::Free(FreeId::ERASED).rc(),
            // dangling: treat enclosing binders as kept
            None => Pure::Bound(i - env.len() + depth).rc(),
        },
        Expr::Free(x) => Pure::Free(*x).rc(),
        Expr::Ref(r) => Pure::Ref(r.clone()).rc(),
        Expr::Star
        | Expr::Pi { .. }
        | Expr::All { .. }
        | Expr::Iota { .. }
        | Expr::Eq(..)
        | Expr::Beta(None) => Pure::identity(),
        Expr::Lam { name, body, .. } => {
            env.push(Slot::Kept(depth));
            let b = go(body, env, depth + 1);
            env.pop();
            Pure::Lam(name.clone(), b).rc()
        }
        Expr::ILam { body, .. } => {
            env.push(Slot::Dropped);
            let b = go(body, env, depth);
            env.pop();
            b
        }
        Expr::App(f, a) => Pure::app(go(f, env, depth), go(a, env, depth)),
        Expr::EApp(f, _) | Expr::TApp(f, _) => go(f, env, depth),
        Expr::Pair(a, _) => go(a, env, depth),
        Expr::Proj(t, _) | Expr::Sym(t) | Expr::Beta(Some(t)) => go(t, env, depth),
        Expr::Rho { body, .. } => go(body, env, depth),
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::syntax::parse_expr;

    fn er(src: &str) -> String {
        erase(&parse_expr(src, &HashSet::new()).unwrap()).to_string()
    }

    #[test]
    fn drops_types_and_erased_parts() {
        assert_eq!(er("Λ X . λ z : X . λ s : X ➔ X . s z"), "λ z . λ s . s z");
        assert_eq!(er("λ f . Λ n . f -n · ★"), "λ f . f");
        assert_eq!(er("λ a . λ b . [ a , b ].2"), "λ a . λ b . a");
        assert_eq!(er("λ q . ρ q - β{q}"), "λ q . q");
        assert_eq!(er("β"), "λ x . x");
        assert_eq!(er("λ a . ς a"), "λ a . a");
    }

    #[test]
    fn indices_skip_dropped_binders() {
        let e = parse_expr("λ x . Λ y . λ z . x", &HashSet::new()).unwrap();
        assert_eq!(
            *erase(&e),
            *Pure::lam("x", Pure::lam("z", Pure::Bound(1).rc()))
        );
    }

    #[test]
    fn leaking_implicit_variables_are_marked() {
        let e = parse_expr("Λ x . x", &HashSet::new()).unwrap();
        assert_eq!(*erase(&e), Pure::Free(FreeId::ERASED));
    }

    #[test]
    fn substitution_avoids_capture() {
        // (λ y . x) [x := y'] where y' is free index 0 outside
        let body = Pure::lam("y", Pure::Bound(1).rc());
        let r = body.subst_top(&Pure::Bound(0).rc());
        assert_eq!(*r, *Pure::lam("y", Pure::Bound(1).rc()));
    }
}
