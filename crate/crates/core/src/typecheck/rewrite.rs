use super::{Checker, Result};
use crate::erasure::{erase, RcPure};
use crate::syntax::{Expr, RcExpr};

type PositionFn<'a, 's> = dyn FnMut(&mut Checker<'s>, &RcExpr) -> Result<RcExpr> + 'a;

impl<'s> Checker<'s> {
    /// Replace, in the term positions of `ty`, every subterm whose erasure
    /// converts with that of `l` by `r`. With `plus`, term positions are
    /// normalized first. If the type as written has no occurrence, its fully
    /// unfolded form is tried. Returns the new type and the occurrence count.
    pub(crate) fn rewrite(
        &mut self,
        ty: &RcExpr,
        l: &RcExpr,
        r: &RcExpr,
        plus: bool,
    ) -> Result<(RcExpr, usize)> {
        let target = self.nf(&erase(l))?;
        let mut candidate = ty.clone();
        for pass in 0..2 {
            if pass == 1 {
                candidate = self.type_normalize(&candidate);
            }
            if plus {
                candidate =
                    self.map_positions(&candidate, &mut |s, e| Ok(s.nf(&erase(e))?.embed()))?;
            }
            let mut count = 0;
            let out = self.map_positions(&candidate, &mut |s, e| {
                s.replace_in_term(e, &target, r, &mut count)
            })?;
            if count > 0 {
                return Ok((out, count));
            }
        }
        Ok((ty.clone(), 0))
    }

    fn under_type(&mut self, body: &RcExpr, f: &mut PositionFn<'_, 's>) -> Result<RcExpr> {
        let id = self.fresh();
        let opened = body.instantiate(&Expr::Free(id).rc());
        Ok(self.map_positions(&opened, f)?.close(id, 0))
    }

    /// Rebuild a type, transforming each embedded term position with `f`.
    fn map_positions(&mut self, t: &RcExpr, f: &mut PositionFn<'_, 's>) -> Result<RcExpr> {
        Ok(match &**t {
            Expr::Pi { name, dom, cod } => Expr::Pi {
                name: name.clone(),
                dom: self.map_positions(dom, f)?,
                cod: self.under_type(cod, f)?,
            }
            .rc(),
            Expr::All { name, dom, cod } => Expr::All {
                name: name.clone(),
                dom: self.map_positions(dom, f)?,
                cod: self.under_type(cod, f)?,
            }
            .rc(),
            Expr::Iota { name, fst, snd } => Expr::Iota {
                name: name.clone(),
                fst: self.map_positions(fst, f)?,
                snd: self.under_type(snd, f)?,
            }
            .rc(),
            Expr::Lam { name, ann, body } => Expr::Lam {
                name: name.clone(),
                ann: match ann {
                    Some(a) => Some(self.map_positions(a, f)?),
                    None => None,
                },
                body: self.under_type(body, f)?,
            }
            .rc(),
            Expr::App(g, a) => Expr::App(self.map_positions(g, f)?, f(self, a)?).rc(),
            Expr::TApp(g, a) => {
                Expr::TApp(self.map_positions(g, f)?, self.map_positions(a, f)?).rc()
            }
            Expr::Eq(a, b) => Expr::Eq(f(self, a)?, f(self, b)?).rc(),
            _ => t.clone(),
        })
    }

    fn replace_in_term(
        &mut self,
        s: &RcExpr,
        target: &RcPure,
        r: &RcExpr,
        count: &mut usize,
    ) -> Result<RcExpr> {
        if self.nf(&erase(s))? == *target {
            *count += 1;
            return Ok(r.clone());
        }
        Ok(match &**s {
            Expr::App(f, a) => Expr::App(
                self.replace_in_term(f, target, r, count)?,
                self.replace_in_term(a, target, r, count)?,
            )
            .rc(),
            Expr::EApp(f, a) => {
                Expr::EApp(self.replace_in_term(f, target, r, count)?, a.clone()).rc()
            }
            Expr::TApp(f, a) => {
                Expr::TApp(self.replace_in_term(f, target, r, count)?, a.clone()).rc()
            }
            Expr::Pair(a, b) => {
                Expr::Pair(self.replace_in_term(a, target, r, count)?, b.clone()).rc()
            }
            Expr::Proj(e, side) => {
                Expr::Proj(self.replace_in_term(e, target, r, count)?, *side).rc()
            }
            Expr::Lam { name, ann, body } => {
                let id = self.fresh();
                let opened = body.instantiate(&Expr::Free(id).rc());
                let body = self
                    .replace_in_term(&opened, target, r, count)?
                    .close(id, 0);
                Expr::Lam {
                    name: name.clone(),
                    ann: ann.clone(),
                    body,
                }
                .rc()
            }
            Expr::ILam { name, ann, body } => {
                let id = self.fresh();
                let opened = body.instantiate(&Expr::Free(id).rc());
                let body = self
                    .replace_in_term(&opened, target, r, count)?
                    .close(id, 0);
                Expr::ILam {
                    name: name.clone(),
                    ann: ann.clone(),
                    body,
                }
                .rc()
            }
            _ => s.clone(),
        })
    }
}
