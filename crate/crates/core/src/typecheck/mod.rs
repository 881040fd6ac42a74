//! Bidirectional checking of types, kinds and annotated terms.
//!
//! Binders are opened with fresh context variables, so every expression the
//! checker looks at is locally closed. Definitional equality of embedded
//! terms is conversion of their erasures.

mod error;
mod report;
mod rewrite;

use crate::erasure::{erase, free_in_erasure, RcPure};
use crate::normalize::Normalizer;
use crate::signature::Signature;
use crate::syntax::printer::default_free_name;
#[cfg(test)]
use crate::syntax::Item;
use crate::syntax::{Charset, Decl, Expr, FreeId, Hint, Printer, RcExpr, Side};

pub use error::TypeError;
pub use report::{
    check_items, check_signature, AssertionReport, CheckReport, DeclReport, ReportItem, Status,
};

type Result<T> = std::result::Result<T, TypeError>;

#[derive(Clone, Debug)]
pub enum Binding {
    /// A term variable; `erased` when bound by `Λ`.
    Term {
        ty: RcExpr,
        erased: bool,
    },
    Type {
        kind: RcExpr,
    },
}

impl Binding {
    /// Binding for a variable whose classifier is `dom`.
    fn for_classifier(dom: &RcExpr, erased: bool) -> Binding {
        if dom.is_kind() {
            Binding::Type { kind: dom.clone() }
        } else {
            Binding::Term {
                ty: dom.clone(),
                erased,
            }
        }
    }
}

/// The typing context, innermost binding last.
#[derive(Clone, Debug, Default)]
pub struct Context {
    entries: Vec<(FreeId, Hint, Binding)>,
}

impl Context {
    pub fn lookup(&self, id: FreeId) -> Option<&Binding> {
        self.entries
            .iter()
            .rev()
            .find(|(x, _, _)| *x == id)
            .map(|(_, _, b)| b)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn name_of(&self, id: FreeId) -> String {
        let Some(pos) = self.entries.iter().position(|(x, _, _)| *x == id) else {
            return default_free_name(id);
        };
        let hint = self.entries[pos].1.as_str();
        let base = if hint == "_" { "x" } else { hint };
        let earlier = self.entries[..pos]
            .iter()
            .filter(|(_, h, _)| h.as_str() == hint)
            .count();
        if earlier == 0 {
            base.to_string()
        } else {
            format!("{base}{earlier}")
        }
    }
}

#[derive(Clone, Copy)]
enum Mode {
    Term,
    Type,
}

pub struct Checker<'s> {
    sig: &'s Signature,
    fuel: u64,
    ctx: Context,
    next: u32,
    fuel_used: u64,
    warnings: Vec<String>,
}

impl<'s> Checker<'s> {
    pub fn new(sig: &'s Signature, fuel: u64) -> Self {
        Checker {
            sig,
            fuel,
            ctx: Context::default(),
            next: 0,
            fuel_used: 0,
            warnings: Vec::new(),
        }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    /// Reduction steps spent so far, including failed attempts.
    pub fn fuel_used(&self) -> u64 {
        self.fuel_used
    }

    pub fn take_warnings(&mut self) -> Vec<String> {
        std::mem::take(&mut self.warnings)
    }

    pub fn show(&self, e: &Expr) -> String {
        let names = |id: FreeId| self.ctx.name_of(id);
        Printer::new(Charset::Unicode, &names).expr(e)
    }

    fn show_pure(&self, p: &RcPure) -> String {
        self.show(&p.embed())
    }

    fn fresh(&mut self) -> FreeId {
        let id = FreeId(self.next);
        self.next += 1;
        id
    }

    /// Run `f` with a new context variable, passed as an expression.
    pub fn bind<R>(
        &mut self,
        hint: &Hint,
        binding: Binding,
        f: impl FnOnce(&mut Self, RcExpr) -> Result<R>,
    ) -> Result<R> {
        let id = self.fresh();
        self.ctx.entries.push((id, hint.clone(), binding));
        let r = f(self, Expr::Free(id).rc());
        self.ctx.entries.pop();
        r
    }

    fn nf(&mut self, t: &RcPure) -> Result<RcPure> {
        let mut n = Normalizer::new(self.sig, self.fuel);
        let r = n.run(t);
        self.fuel_used += n.steps();
        Ok(r?)
    }

    /// Conversion of the erasures of two terms.
    fn conv_terms(&mut self, a: &Expr, b: &Expr) -> Result<bool> {
        let (x, y) = (erase(a), erase(b));
        if x == y {
            return Ok(true);
        }
        Ok(self.nf(&x)? == self.nf(&y)?)
    }

    // ---- types and kinds ----

    /// Weak head normal form: unfold type definitions and contract
    /// type-level redexes at the head.
    pub fn whnf(&self, t: &RcExpr) -> RcExpr {
        let (mut head, mut args) = spine(t);
        loop {
            match &*head {
                Expr::Lam { body, .. } if !args.is_empty() => {
                    let (_, a) = args.remove(0);
                    head = body.instantiate(&a);
                    let (h, more) = spine(&head);
                    head = h;
                    args.splice(0..0, more);
                }
                Expr::Ref(name) => match self.sig.get(name) {
                    Some(def) if def.decl.is_type_def() => {
                        let (h, more) = spine(&def.decl.body);
                        head = h;
                        args.splice(0..0, more);
                    }
                    _ => break,
                },
                _ => break,
            }
        }
        rebuild(head, args)
    }

    /// Unfold and contract everywhere, leaving term positions untouched.
    pub fn type_normalize(&mut self, t: &RcExpr) -> RcExpr {
        let w = self.whnf(t);
        match &*w {
            Expr::Pi { name, dom, cod } => Expr::Pi {
                name: name.clone(),
                dom: self.type_normalize(dom),
                cod: self.normalize_under(cod),
            }
            .rc(),
            Expr::All { name, dom, cod } => Expr::All {
                name: name.clone(),
                dom: self.type_normalize(dom),
                cod: self.normalize_under(cod),
            }
            .rc(),
            Expr::Iota { name, fst, snd } => Expr::Iota {
                name: name.clone(),
                fst: self.type_normalize(fst),
                snd: self.normalize_under(snd),
            }
            .rc(),
            Expr::Lam { name, ann, body } => Expr::Lam {
                name: name.clone(),
                ann: ann.as_ref().map(|a| self.type_normalize(a)),
                body: self.normalize_under(body),
            }
            .rc(),
            Expr::App(f, a) => Expr::App(self.type_normalize(f), a.clone()).rc(),
            Expr::TApp(f, a) => Expr::TApp(self.type_normalize(f), self.type_normalize(a)).rc(),
            _ => w,
        }
    }

    fn normalize_under(&mut self, body: &RcExpr) -> RcExpr {
        let id = self.fresh();
        let opened = body.instantiate(&Expr::Free(id).rc());
        self.type_normalize(&opened).close(id, 0)
    }

    /// Definitional equality of types (and kinds).
    pub fn type_conv(&mut self, a: &RcExpr, b: &RcExpr) -> Result<bool> {
        if a == b {
            return Ok(true);
        }
        let (ha, aa) = spine(a);
        let (hb, ab) = spine(b);
        if !aa.is_empty() && is_neutral_head(&ha) && ha == hb && self.args_conv(&aa, &ab)? {
            return Ok(true);
        }
        let (wa, wb) = (self.whnf(a), self.whnf(b));
        self.structural(&wa, &wb)
    }

    fn under2(&mut self, a: &RcExpr, b: &RcExpr) -> Result<bool> {
        let x = Expr::Free(self.fresh()).rc();
        self.type_conv(&a.instantiate(&x), &b.instantiate(&x))
    }

    fn structural(&mut self, a: &RcExpr, b: &RcExpr) -> Result<bool> {
        match (&**a, &**b) {
            (Expr::Star, Expr::Star) => Ok(true),
            (
                Expr::Pi {
                    dom: d1, cod: c1, ..
                },
                Expr::Pi {
                    dom: d2, cod: c2, ..
                },
            )
            | (
                Expr::All {
                    dom: d1, cod: c1, ..
                },
                Expr::All {
                    dom: d2, cod: c2, ..
                },
            )
            | (
                Expr::Iota {
                    fst: d1, snd: c1, ..
                },
                Expr::Iota {
                    fst: d2, snd: c2, ..
                },
            ) => Ok(self.type_conv(d1, d2)? && self.under2(c1, c2)?),
            (Expr::Lam { body: b1, .. }, Expr::Lam { body: b2, .. }) => self.under2(b1, b2),
            (Expr::Eq(l1, r1), Expr::Eq(l2, r2)) => {
                Ok(self.conv_terms(l1, l2)? && self.conv_terms(r1, r2)?)
            }
            _ => {
                let (ha, aa) = spine(a);
                let (hb, ab) = spine(b);
                Ok(is_neutral_head(&ha) && ha == hb && self.args_conv(&aa, &ab)?)
            }
        }
    }

    fn args_conv(&mut self, xs: &[(Mode, RcExpr)], ys: &[(Mode, RcExpr)]) -> Result<bool> {
        if xs.len() != ys.len() {
            return Ok(false);
        }
        for ((mx, x), (my, y)) in xs.iter().zip(ys) {
            let same = match (mx, my) {
                (Mode::Term, Mode::Term) => self.conv_terms(x, y)?,
                (Mode::Type, Mode::Type) => self.type_conv(x, y)?,
                _ => false,
            };
            if !same {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn check_kind(&mut self, k: &RcExpr) -> Result<()> {
        match &**k {
            Expr::Star => Ok(()),
            Expr::Pi { name, dom, cod } => {
                self.check_classifier(dom)?;
                self.bind(name, Binding::for_classifier(dom, false), |s, x| {
                    s.check_kind(&cod.instantiate(&x))
                })
            }
            _ => Err(TypeError::NotAKind(self.show(k))),
        }
    }

    /// A binder classifier is either a kind or a type of kind ★.
    fn check_classifier(&mut self, c: &RcExpr) -> Result<()> {
        if c.is_kind() {
            self.check_kind(c)
        } else {
            self.check_type_star(c)
        }
    }

    fn check_type_star(&mut self, t: &RcExpr) -> Result<()> {
        let k = self.kind_of(t)?;
        if matches!(*k, Expr::Star) {
            Ok(())
        } else {
            Err(TypeError::KindMismatch {
                ty: self.show(t),
                expected: "★".into(),
                found: self.show(&k),
            })
        }
    }

    fn ill_kinded(&self, t: &Expr, reason: &str) -> TypeError {
        TypeError::IllKinded {
            ty: self.show(t),
            reason: reason.to_string(),
        }
    }

    /// Synthesize the kind of a type.
    pub fn kind_of(&mut self, t: &RcExpr) -> Result<RcExpr> {
        match &**t {
            Expr::Free(x) => match self.ctx.lookup(*x) {
                Some(Binding::Type { kind }) => Ok(kind.clone()),
                _ => Err(self.ill_kinded(t, "a term variable is not a type")),
            },
            Expr::Ref(name) => match self.sig.get(name) {
                Some(def) if def.decl.is_type_def() => Ok(def.decl.classifier.clone()),
                _ => Err(self.ill_kinded(t, "a term definition is not a type")),
            },
            Expr::Pi { name, dom, cod } | Expr::All { name, dom, cod } => {
                self.check_classifier(dom)?;
                self.bind(name, Binding::for_classifier(dom, false), |s, x| {
                    s.check_type_star(&cod.instantiate(&x))
                })?;
                Ok(Expr::Star.rc())
            }
            Expr::Iota { name, fst, snd } => {
                self.check_type_star(fst)?;
                self.bind(
                    name,
                    Binding::Term {
                        ty: fst.clone(),
                        erased: false,
                    },
                    |s, x| s.check_type_star(&snd.instantiate(&x)),
                )?;
                Ok(Expr::Star.rc())
            }
            Expr::Eq(..) => Ok(Expr::Star.rc()),
            Expr::Lam {
                name,
                ann: Some(dom),
                body,
            } => {
                self.check_classifier(dom)?;
                let cod = self.bind(name, Binding::for_classifier(dom, false), |s, x| {
                    let Expr::Free(id) = *x else { unreachable!() };
                    Ok(s.kind_of(&body.instantiate(&x))?.close(id, 0))
                })?;
                Ok(Expr::Pi {
                    name: name.clone(),
                    dom: dom.clone(),
                    cod,
                }
                .rc())
            }
            Expr::Lam { ann: None, .. } => Err(TypeError::CannotInfer(self.show(t))),
            Expr::App(f, a) => {
                let kf = self.kind_of(f)?;
                match &*kf {
                    Expr::Pi { dom, cod, .. } if !dom.is_kind() => {
                        self.check(a, dom)?;
                        Ok(cod.instantiate(a))
                    }
                    Expr::Pi { .. } => Err(self.ill_kinded(t, "expects a type argument")),
                    _ => Err(self.ill_kinded(t, "applied type is not a family")),
                }
            }
            Expr::TApp(f, a) => {
                let kf = self.kind_of(f)?;
                match &*kf {
                    Expr::Pi { dom, cod, .. } if dom.is_kind() => {
                        self.check_type_kind(a, dom)?;
                        Ok(cod.instantiate(a))
                    }
                    Expr::Pi { .. } => Err(self.ill_kinded(t, "expects a term argument")),
                    _ => Err(self.ill_kinded(t, "applied type is not a family")),
                }
            }
            Expr::Star => Err(self.ill_kinded(t, "★ is a kind")),
            _ => Err(self.ill_kinded(t, "a term is not a type")),
        }
    }

    /// Check a type against a kind; unannotated type-level λs are allowed.
    pub fn check_type_kind(&mut self, t: &RcExpr, kind: &RcExpr) -> Result<()> {
        if let (
            Expr::Lam {
                name,
                ann: None,
                body,
            },
            Expr::Pi { dom, cod, .. },
        ) = (&**t, &**kind)
        {
            return self.bind(name, Binding::for_classifier(dom, false), |s, x| {
                s.check_type_kind(&body.instantiate(&x), &cod.instantiate(&x))
            });
        }
        let found = self.kind_of(t)?;
        if self.type_conv(&found, kind)? {
            Ok(())
        } else {
            Err(TypeError::KindMismatch {
                ty: self.show(t),
                expected: self.show(kind),
                found: self.show(&found),
            })
        }
    }

    // ---- terms ----

    fn shape(&self, construct: &'static str, ty: &Expr) -> TypeError {
        TypeError::Shape {
            construct,
            ty: self.show(ty),
        }
    }

    fn mismatch(&mut self, expected: &RcExpr, found: &RcExpr) -> TypeError {
        let (e, f) = (self.show(expected), self.show(found));
        if e != f {
            return TypeError::Mismatch {
                expected: e,
                found: f,
            };
        }
        let (e, f) = (self.type_normalize(expected), self.type_normalize(found));
        TypeError::Mismatch {
            expected: self.show(&e),
            found: self.show(&f),
        }
    }

    /// Check a term against a type.
    pub fn check(&mut self, t: &RcExpr, ty: &RcExpr) -> Result<()> {
        match &**t {
            Expr::Lam { name, ann, body } => {
                let w = self.whnf(ty);
                let Expr::Pi { dom, cod, .. } = &*w else {
                    return Err(self.shape("λ-abstraction", ty));
                };
                if let Some(a) = ann {
                    self.check_classifier(a)?;
                    if !self.type_conv(a, dom)? {
                        return Err(self.mismatch(dom, a));
                    }
                }
                self.bind(name, Binding::for_classifier(dom, false), |s, x| {
                    s.check(&body.instantiate(&x), &cod.instantiate(&x))
                })
            }
            Expr::ILam { name, ann, body } => {
                let w = self.whnf(ty);
                let Expr::All { dom, cod, .. } = &*w else {
                    return Err(self.shape("Λ-abstraction", ty));
                };
                if let Some(a) = ann {
                    self.check_classifier(a)?;
                    if !self.type_conv(a, dom)? {
                        return Err(self.mismatch(dom, a));
                    }
                }
                self.bind(name, Binding::for_classifier(dom, true), |s, x| {
                    let Expr::Free(id) = *x else { unreachable!() };
                    let body = body.instantiate(&x);
                    if free_in_erasure(id, &body) {
                        return Err(TypeError::SideCondition {
                            name: s.ctx.name_of(id),
                        });
                    }
                    s.check(&body, &cod.instantiate(&x))
                })
            }
            Expr::Pair(a, b) => {
                let w = self.whnf(ty);
                let Expr::Iota { fst, snd, .. } = &*w else {
                    return Err(self.shape("intersection pair", ty));
                };
                self.check(a, fst)?;
                self.check(b, &snd.instantiate(a))?;
                let (ea, eb) = (erase(a), erase(b));
                if ea != eb {
                    let (na, nb) = (self.nf(&ea)?, self.nf(&eb)?);
                    if na != nb {
                        return Err(TypeError::IntersectionMismatch {
                            left: self.show_pure(&na),
                            right: self.show_pure(&nb),
                        });
                    }
                }
                Ok(())
            }
            Expr::Beta(_) => {
                let w = self.whnf(ty);
                let Expr::Eq(l, r) = &*w else {
                    return Err(self.shape("β", ty));
                };
                if self.conv_terms(l, r)? {
                    Ok(())
                } else {
                    let (nl, nr) = (self.nf(&erase(l))?, self.nf(&erase(r))?);
                    Err(TypeError::BetaMismatch {
                        left: self.show_pure(&nl),
                        right: self.show_pure(&nr),
                    })
                }
            }
            Expr::Rho { plus, proof, body } => {
                let (l, r) = self.infer_equation(proof)?;
                let (goal, count) = self.rewrite(ty, &l, &r, *plus)?;
                if count == 0 {
                    let msg = format!(
                        "ρ found no occurrence of {} in {}",
                        self.show(&l),
                        self.show(ty)
                    );
                    self.warnings.push(msg);
                }
                self.check(body, &goal)
            }
            _ => {
                let found = self.infer(t)?;
                if self.type_conv(&found, ty)? {
                    Ok(())
                } else {
                    Err(self.mismatch(ty, &found))
                }
            }
        }
    }

    /// Infer the type of `q` and expose it as an equation.
    fn infer_equation(&mut self, q: &RcExpr) -> Result<(RcExpr, RcExpr)> {
        let ty = self.infer(q)?;
        let w = self.whnf(&ty);
        match &*w {
            Expr::Eq(l, r) => Ok((l.clone(), r.clone())),
            _ => Err(TypeError::NotAnEquation {
                term: self.show(q),
                ty: self.show(&ty),
            }),
        }
    }

    fn application_error(&self, f: &Expr, fty: &Expr, found: &'static str) -> TypeError {
        let expected = match fty {
            Expr::Pi { dom, .. } if !dom.is_kind() => "an explicit argument",
            Expr::All { dom, .. } if dom.is_kind() => "a type argument `·`",
            Expr::All { .. } => "an erased argument `-`",
            _ => {
                return TypeError::NotAFunction {
                    term: self.show(f),
                    ty: self.show(fty),
                };
            }
        };
        TypeError::ApplicationMode {
            term: self.show(f),
            expected,
            found,
        }
    }

    /// Synthesize the type of a term.
    pub fn infer(&mut self, t: &RcExpr) -> Result<RcExpr> {
        match &**t {
            Expr::Free(x) => match self.ctx.lookup(*x) {
                Some(Binding::Term { ty, .. }) => Ok(ty.clone()),
                _ => Err(TypeError::NotATerm(self.show(t))),
            },
            Expr::Ref(name) => match self.sig.get(name) {
                Some(def) if !def.decl.is_type_def() => Ok(def.decl.classifier.clone()),
                _ => Err(TypeError::NotATerm(self.show(t))),
            },
            Expr::App(f, a) => {
                let fty = self.infer(f)?;
                let w = self.whnf(&fty);
                match &*w {
                    Expr::Pi { dom, cod, .. } if !dom.is_kind() => {
                        self.check(a, dom)?;
                        Ok(cod.instantiate(a))
                    }
                    _ => Err(self.application_error(f, &w, "an explicit argument")),
                }
            }
            Expr::EApp(f, a) => {
                let fty = self.infer(f)?;
                let w = self.whnf(&fty);
                match &*w {
                    Expr::All { dom, cod, .. } if !dom.is_kind() => {
                        self.check(a, dom)?;
                        Ok(cod.instantiate(a))
                    }
                    _ => Err(self.application_error(f, &w, "an erased argument `-`")),
                }
            }
            Expr::TApp(f, a) => {
                let fty = self.infer(f)?;
                let w = self.whnf(&fty);
                match &*w {
                    Expr::All { dom, cod, .. } if dom.is_kind() => {
                        self.check_type_kind(a, dom)?;
                        Ok(cod.instantiate(a))
                    }
                    _ => Err(self.application_error(f, &w, "a type argument `·`")),
                }
            }
            Expr::Proj(e, side) => {
                let ty = self.infer(e)?;
                let w = self.whnf(&ty);
                match &*w {
                    Expr::Iota { fst, snd, .. } => Ok(match side {
                        Side::First => fst.clone(),
                        Side::Second => snd.instantiate(&Expr::Proj(e.clone(), Side::First).rc()),
                    }),
                    _ => Err(TypeError::NotAnIntersection {
                        term: self.show(e),
                        ty: self.show(&ty),
                    }),
                }
            }
            Expr::Sym(q) => {
                let (l, r) = self.infer_equation(q)?;
                Ok(Expr::Eq(r, l).rc())
            }
            Expr::Lam {
                name,
                ann: Some(dom),
                body,
            } => {
                self.check_classifier(dom)?;
                let cod = self.bind(name, Binding::for_classifier(dom, false), |s, x| {
                    let Expr::Free(id) = *x else { unreachable!() };
                    Ok(s.infer(&body.instantiate(&x))?.close(id, 0))
                })?;
                Ok(Expr::Pi {
                    name: name.clone(),
                    dom: dom.clone(),
                    cod,
                }
                .rc())
            }
            Expr::ILam {
                name,
                ann: Some(dom),
                body,
            } => {
                self.check_classifier(dom)?;
                let cod = self.bind(name, Binding::for_classifier(dom, true), |s, x| {
                    let Expr::Free(id) = *x else { unreachable!() };
                    let body = body.instantiate(&x);
                    if free_in_erasure(id, &body) {
                        return Err(TypeError::SideCondition {
                            name: s.ctx.name_of(id),
                        });
                    }
                    Ok(s.infer(&body)?.close(id, 0))
                })?;
                Ok(Expr::All {
                    name: name.clone(),
                    dom: dom.clone(),
                    cod,
                }
                .rc())
            }
            Expr::Lam { .. }
            | Expr::ILam { .. }
            | Expr::Pair(..)
            | Expr::Beta(_)
            | Expr::Rho { .. } => Err(TypeError::CannotInfer(self.show(t))),
            Expr::Bound(_)
            | Expr::Star
            | Expr::Pi { .. }
            | Expr::All { .. }
            | Expr::Iota { .. }
            | Expr::Eq(..) => Err(TypeError::NotATerm(self.show(t))),
        }
    }

    /// Check one top-level declaration against its classifier.
    pub fn check_decl(&mut self, d: &Decl) -> Result<()> {
        if d.is_type_def() {
            self.check_kind(&d.classifier)?;
            self.check_type_kind(&d.body, &d.classifier)
        } else {
            self.check_type_star(&d.classifier)?;
            self.check(&d.body, &d.classifier)
        }
    }
}

fn is_neutral_head(e: &Expr) -> bool {
    matches!(e, Expr::Free(_) | Expr::Ref(_))
}

/// Split a type-level application into its head and arguments.
fn spine(t: &RcExpr) -> (RcExpr, Vec<(Mode, RcExpr)>) {
    let mut head = t.clone();
    let mut args = Vec::new();
    loop {
        match &*head {
            Expr::App(f, a) => {
                args.push((Mode::Term, a.clone()));
                head = f.clone();
            }
            Expr::TApp(f, a) => {
                args.push((Mode::Type, a.clone()));
                head = f.clone();
            }
            _ => break,
        }
    }
    args.reverse();
    (head, args)
}

fn rebuild(head: RcExpr, args: Vec<(Mode, RcExpr)>) -> RcExpr {
    args.into_iter().fold(head, |f, (m, a)| match m {
        Mode::Term => Expr::App(f, a).rc(),
        Mode::Type => Expr::TApp(f, a).rc(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    /// Open `∀ A : ★ . ∀ n : Nat . ∀ xsC : VecC · A n . ∀ X : ★ . ★` and hand
    /// the variables to `f` as a closed-over checker.
    fn with_vars(sig: &Signature, f: impl FnOnce(&mut Checker<'_>, &[RcExpr])) {
        let mut c = Checker::new(sig, 10_000);
        let star = Expr::Star.rc();
        let nat = sig.parse_expr("Nat").unwrap();
        c.bind(
            &Hint::new("A"),
            Binding::Type { kind: star.clone() },
            |c, a| {
                c.bind(
                    &Hint::new("n"),
                    Binding::Term {
                        ty: nat,
                        erased: true,
                    },
                    |c, n| {
                        let vec_c = Expr::app(
                            Expr::TApp(sig.parse_expr("VecC").unwrap(), a.clone()).rc(),
                            n.clone(),
                        );
                        c.bind(
                            &Hint::new("xsC"),
                            Binding::Term {
                                ty: vec_c,
                                erased: true,
                            },
                            |c, xs| {
                                c.bind(&Hint::new("X"), Binding::Type { kind: star }, |c, x| {
                                    f(c, &[a.clone(), n.clone(), xs.clone(), x]);
                                    Ok(())
                                })
                            },
                        )
                    },
                )
            },
        )
        .unwrap();
    }

    fn tapp(f: RcExpr, a: &RcExpr) -> RcExpr {
        Expr::TApp(f, a.clone()).rc()
    }

    #[test]
    fn reflection_types_agree_after_unfolding() {
        let sig = corpus::prefix(3).unwrap();
        with_vars(&sig, |c, v| {
            let vec_r = Expr::app(
                Expr::app(tapp(sig.parse_expr("VecR").unwrap(), &v[0]), v[1].clone()),
                v[2].clone(),
            );
            let list_r = Expr::app(tapp(sig.parse_expr("ListR").unwrap(), &v[0]), v[2].clone());
            assert!(c.type_conv(&vec_r, &list_r).unwrap());
        });
    }

    #[test]
    fn type_level_beta() {
        let sig = corpus::prefix(1).unwrap();
        let nat = sig.parse_expr("Nat").unwrap();
        let mut c = Checker::new(&sig, 10_000);
        c.bind(
            &Hint::new("X"),
            Binding::Type {
                kind: Expr::Star.rc(),
            },
            |c, x| {
                let lam = Expr::Lam {
                    name: Hint::new("_"),
                    ann: Some(nat),
                    body: x.clone(),
                }
                .rc();
                let redex = Expr::app(lam, sig.parse_expr("zero").unwrap());
                assert!(c.type_conv(&redex, &x)?);
                assert_eq!(c.whnf(&redex), x);
                Ok(())
            },
        )
        .unwrap();
    }

    #[test]
    fn vectors_are_not_lists() {
        let sig = corpus::prefix(3).unwrap();
        with_vars(&sig, |c, v| {
            let vec = Expr::app(tapp(sig.parse_expr("Vec").unwrap(), &v[0]), v[1].clone());
            let list = tapp(sig.parse_expr("List").unwrap(), &v[0]);
            assert!(!c.type_conv(&vec, &list).unwrap());
        });
    }

    #[test]
    fn application_modes_are_enforced() {
        let mut sig = corpus::prefix(1).unwrap();
        let r = sig
            .extend("k ◂ ∀ X : ★ . X ➔ X = Λ X . λ x . x .\nbad ◂ Nat ➔ Nat = k Nat .")
            .unwrap();
        let Item::Decl(d) = &sig.items()[r.end - 1] else {
            panic!()
        };
        let err = Checker::new(&sig, 1000).check_decl(d).unwrap_err();
        assert_eq!(err.class(), "application-mode");
    }

    #[test]
    fn rho_without_occurrence_warns() {
        let mut sig = corpus::prefix(1).unwrap();
        let r = sig
            .extend("w ◂ ∀ q : {zero ≃ suc zero} . ∀ X : ★ . X ➔ X = Λ q . Λ X . λ x . ρ q - x .")
            .unwrap();
        let Item::Decl(d) = &sig.items()[r.start] else {
            panic!()
        };
        let mut c = Checker::new(&sig, 1000);
        c.check_decl(d).unwrap();
        assert_eq!(c.take_warnings().len(), 1);
    }
}
