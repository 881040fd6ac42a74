//! Reference machinery shared by the integration tests: a separate
//! applicative-order evaluator, Church encoders and decoders, and native
//! implementations of the list and numeral functions.

#![allow(dead_code)]

use cedlite::erasure::{Pure, RcPure};
use cedlite::signature::Signature;
use cedlite::syntax::FreeId;
use proptest::prelude::*;

/// Closed-world lambda terms with de Bruijn indices and opaque atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tm {
    Var(usize),
    Atom(u32),
    Lam(Box<Tm>),
    App(Box<Tm>, Box<Tm>),
}

pub fn lam(b: Tm) -> Tm {
    Tm::Lam(Box::new(b))
}

pub fn app(f: Tm, a: Tm) -> Tm {
    Tm::App(Box::new(f), Box::new(a))
}

impl Tm {
    fn shift(&self, by: isize, cutoff: usize) -> Tm {
        match self {
            Tm::Var(i) if *i >= cutoff => Tm::Var((*i as isize + by) as usize),
            Tm::Var(_) | Tm::Atom(_) => self.clone(),
            Tm::Lam(b) => lam(b.shift(by, cutoff + 1)),
            Tm::App(f, a) => app(f.shift(by, cutoff), a.shift(by, cutoff)),
        }
    }

    fn subst(&self, depth: usize, v: &Tm) -> Tm {
        match self {
            Tm::Var(i) if *i == depth => v.shift(depth as isize, 0),
            Tm::Var(i) if *i > depth => Tm::Var(i - 1),
            Tm::Var(_) | Tm::Atom(_) => self.clone(),
            Tm::Lam(b) => lam(b.subst(depth + 1, v)),
            Tm::App(f, a) => app(f.subst(depth, v), a.subst(depth, v)),
        }
    }

    fn mentions(&self, index: usize) -> bool {
        match self {
            Tm::Var(i) => *i == index,
            Tm::Atom(_) => false,
            Tm::Lam(b) => b.mentions(index + 1),
            Tm::App(f, a) => f.mentions(index) || a.mentions(index),
        }
    }
}

/// Translate a kernel term, inlining definitions from `sig`.
pub fn from_pure(sig: &Signature, p: &Pure) -> Tm {
    match p {
        Pure::Bound(i) => Tm::Var(*i),
        Pure::Free(x) => Tm::Atom(x.0),
        Pure::Ref(name) => from_pure(sig, &sig.get(name).expect("defined").erased),
        Pure::Lam(_, b) => lam(from_pure(sig, b)),
        Pure::App(f, a) => app(from_pure(sig, f), from_pure(sig, a)),
    }
}

pub fn to_pure(t: &Tm) -> RcPure {
    match t {
        Tm::Var(i) => Pure::Bound(*i).rc(),
        Tm::Atom(k) => Pure::Free(FreeId(*k)).rc(),
        Tm::Lam(b) => Pure::lam("x", to_pure(b)),
        Tm::App(f, a) => Pure::app(to_pure(f), to_pure(a)),
    }
}

/// Applicative-order evaluation to β-normal form: function and argument
/// are normalized before contraction. `None` when `fuel` runs out.
pub fn eval(t: &Tm, fuel: &mut u64) -> Option<Tm> {
    match t {
        Tm::Var(_) | Tm::Atom(_) => Some(t.clone()),
        Tm::Lam(b) => Some(lam(eval(b, fuel)?)),
        Tm::App(f, a) => {
            let f = eval(f, fuel)?;
            let a = eval(a, fuel)?;
            match f {
                Tm::Lam(b) => {
                    *fuel = fuel.checked_sub(1)?;
                    eval(&b.subst(0, &a), fuel)
                }
                f => Some(app(f, a)),
            }
        }
    }
}

/// Bottom-up η-contraction.
pub fn eta(t: &Tm) -> Tm {
    match t {
        Tm::Var(_) | Tm::Atom(_) => t.clone(),
        Tm::App(f, a) => app(eta(f), eta(a)),
        Tm::Lam(b) => match eta(b) {
            Tm::App(f, a) if *a == Tm::Var(0) && !f.mentions(0) => f.shift(-1, 0),
            b => lam(b),
        },
    }
}

/// βη-normal form by the reference evaluator.
pub fn reference_nf(t: &Tm, fuel: u64) -> Option<Tm> {
    let mut fuel = fuel;
    eval(t, &mut fuel).map(|n| eta(&n))
}

// ---- Church encodings ----

/// `λ z . λ s . s (… (s z))`
pub fn nat(n: usize) -> Tm {
    let mut body = Tm::Var(1);
    for _ in 0..n {
        body = app(Tm::Var(0), body);
    }
    lam(lam(body))
}

/// `λ cN . λ cC . cC x1 (cC x2 (… cN))`
pub fn list(items: &[Tm]) -> Tm {
    let mut body = Tm::Var(1);
    for x in items.iter().rev() {
        body = app(app(Tm::Var(0), x.shift(2, 0)), body);
    }
    lam(lam(body))
}

pub fn atoms(range: std::ops::Range<u32>) -> Vec<Tm> {
    range.map(Tm::Atom).collect()
}

/// Decode a numeral in normal form.
pub fn decode_nat(t: &Tm) -> Option<usize> {
    let Tm::Lam(b) = t else { return None };
    let Tm::Lam(mut body) = (**b).clone() else {
        return None;
    };
    let mut n = 0;
    loop {
        match *body {
            Tm::Var(1) => return Some(n),
            Tm::App(f, a) if *f == Tm::Var(0) => {
                n += 1;
                body = a;
            }
            _ => return None,
        }
    }
}

/// Decode a list in βη-normal form, decoding each element with `elem`.
pub fn decode_list<T>(t: &Tm, elem: &dyn Fn(&Tm) -> Option<T>) -> Option<Vec<T>> {
    let Tm::Lam(b) = t else { return None };
    let Tm::Lam(body) = &**b else { return None };
    let mut out = Vec::new();
    let mut cur: &Tm = body;
    loop {
        match cur {
            Tm::Var(1) => return Some(out),
            Tm::App(f, rest) => {
                let Tm::App(c, x) = &**f else { return None };
                if **c != Tm::Var(0) {
                    return None;
                }
                out.push(elem(&x.shift(-2, 0))?);
                cur = rest;
            }
            _ => return None,
        }
    }
}

pub fn decode_atom(t: &Tm) -> Option<u32> {
    match t {
        Tm::Atom(k) => Some(*k),
        _ => None,
    }
}

// ---- native reference ----

pub fn ref_append(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().chain(b).copied().collect()
}

pub fn ref_concat(xss: &[Vec<u32>]) -> Vec<u32> {
    xss.iter().flatten().copied().collect()
}

/// `outer` lists whose lengths cycle through `inner`, with distinct atoms.
pub fn nested(outer: usize, inner: &[usize]) -> Vec<Vec<u32>> {
    let mut next = 0;
    (0..outer)
        .map(|i| {
            let len = inner[i % inner.len()];
            let v = (next..next + len as u32).collect();
            next += len as u32;
            v
        })
        .collect()
}

pub fn encode_atoms(xs: &[u32]) -> Tm {
    list(&xs.iter().map(|k| Tm::Atom(*k)).collect::<Vec<_>>())
}

pub fn encode_nested(xss: &[Vec<u32>]) -> Tm {
    list(&xss.iter().map(|xs| encode_atoms(xs)).collect::<Vec<_>>())
}

/// Small closed terms: a body over three enclosing binders and a few atoms.
pub fn closed_term() -> impl Strategy<Value = Tm> {
    let leaf = prop_oneof![(0usize..3).prop_map(Tm::Var), (0u32..2).prop_map(Tm::Atom)];
    leaf.prop_recursive(5, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(lam),
            (inner.clone(), inner).prop_map(|(f, a)| app(f, a)),
        ]
    })
    .prop_map(|t| lam(lam(lam(t))))
}

/// One η-expansion at the root: `λ x . t x`.
pub fn eta_expand(t: &Tm) -> Tm {
    lam(app(t.shift(1, 0), Tm::Var(0)))
}

/// η-expand every subterm selected by `pick`, visiting in preorder.
pub fn eta_expand_where(t: &Tm, pick: &mut dyn FnMut() -> bool) -> Tm {
    let inner = match t {
        Tm::Var(_) | Tm::Atom(_) => t.clone(),
        Tm::Lam(b) => lam(eta_expand_where(b, pick)),
        Tm::App(f, a) => app(eta_expand_where(f, pick), eta_expand_where(a, pick)),
    };
    if pick() {
        eta_expand(&inner)
    } else {
        inner
    }
}
