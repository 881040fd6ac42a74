use std::collections::HashSet;

use super::ast::{Decl, Expr, FreeId, Side};
use super::lexer::Tok;

/// Output alphabet for the printer.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Charset {
    #[default]
    Unicode,
    Ascii,
}

#[derive(Clone, Copy)]
enum Sym {
    Lambda,
    BigLambda,
    Pi,
    Forall,
    Iota,
    Rho,
    RhoPlus,
    Sigma,
    Beta,
    Star,
    Arrow,
    ErasedArrow,
    Equiv,
    CDot,
    Triangle,
}

impl Charset {
    fn sym(self, s: Sym) -> &'static str {
        let (u, a) = match s {
            Sym::Lambda => ("λ", "\\"),
            Sym::BigLambda => ("Λ", "/\\"),
            Sym::Pi => ("Π", "Pi"),
            Sym::Forall => ("∀", "forall"),
            Sym::Iota => ("ι", "iota"),
            Sym::Rho => ("ρ", "rho"),
            Sym::RhoPlus => ("ρ+", "rho+"),
            Sym::Sigma => ("ς", "~"),
            Sym::Beta => ("β", "beta"),
            Sym::Star => ("★", "*"),
            Sym::Arrow => ("➔", "->"),
            Sym::ErasedArrow => ("➾", "=>"),
            Sym::Equiv => ("≃", "=="),
            Sym::CDot => ("·", "@"),
            Sym::Triangle => ("◂", "<|"),
        };
        match self {
            Charset::Unicode => u,
            Charset::Ascii => a,
        }
    }
}

pub(crate) fn token_text(tok: &Tok) -> String {
    match tok {
        Tok::Ident(s) => s.clone(),
        Tok::Directive(s) => format!("#{s}"),
        Tok::Proj(k) => format!(".{k}"),
        other => other.to_string().trim_matches('`').to_string(),
    }
}

// precedence levels
const TOP: u8 = 0;
const ARROW: u8 = 1;
const EQUATION: u8 = 2;
const APP: u8 = 3;
const ATOM: u8 = 4;

/// Pretty printer for resolved expressions. Binder names are made unique
/// so that the output re-parses to the same tree.
pub struct Printer<'a> {
    charset: Charset,
    free_name: &'a dyn Fn(FreeId) -> String,
    taken: HashSet<String>,
    env: Vec<String>,
}

pub fn default_free_name(id: FreeId) -> String {
    if id == FreeId::ERASED {
        "?erased".to_string()
    } else {
        format!("?{}", id.0)
    }
}

impl<'a> Printer<'a> {
    pub fn new(charset: Charset, free_name: &'a dyn Fn(FreeId) -> String) -> Self {
        Printer {
            charset,
            free_name,
            taken: HashSet::new(),
            env: Vec::new(),
        }
    }

    pub fn expr(mut self, e: &Expr) -> String {
        self.reserve(e);
        let mut out = String::new();
        self.go(e, TOP, &mut out);
        out
    }

    pub fn decl(mut self, d: &Decl) -> String {
        self.reserve(&d.classifier);
        self.reserve(&d.body);
        let mut out = format!("{} {} ", d.name, self.charset.sym(Sym::Triangle));
        self.go(&d.classifier, TOP, &mut out);
        out.push_str(" = ");
        self.go(&d.body, TOP, &mut out);
        out.push_str(" .");
        out
    }

    fn reserve(&mut self, e: &Expr) {
        let free_name = self.free_name;
        let taken = &mut self.taken;
        e.visit(&mut |n| match n {
            Expr::Ref(r) => {
                taken.insert(r.to_string());
            }
            Expr::Free(x) => {
                taken.insert(free_name(*x));
            }
            _ => {}
        });
    }

    fn fresh(&mut self, hint: &str, used: bool) -> String {
        if hint == "_" && !used {
            return "_".to_string();
        }
        let base = if hint == "_" { "x" } else { hint };
        let mut cand = base.to_string();
        let mut k = 1;
        while self.taken.contains(&cand) || self.env.contains(&cand) || is_reserved(&cand) {
            cand = format!("{base}{k}");
            k += 1;
        }
        cand
    }

    fn sym(&self, s: Sym) -> &'static str {
        self.charset.sym(s)
    }

    fn binder(&mut self, head: Sym, hint: &str, ann: Option<&Expr>, body: &Expr, out: &mut String) {
        let name = self.fresh(hint, body.has_bound(0));
        out.push_str(self.sym(head));
        out.push(' ');
        out.push_str(&name);
        if let Some(a) = ann {
            out.push_str(" : ");
            self.go(a, ARROW, out);
        }
        out.push_str(" . ");
        self.env.push(name);
        self.go(body, TOP, out);
        self.env.pop();
    }

    fn arrow(&mut self, head: Sym, dom: &Expr, cod: &Expr, out: &mut String) {
        self.go(dom, EQUATION, out);
        out.push(' ');
        out.push_str(self.sym(head));
        out.push(' ');
        self.env.push("_".to_string());
        self.go(cod, ARROW, out);
        self.env.pop();
    }

    fn go(&mut self, e: &Expr, prec: u8, out: &mut String) {
        let need = match e {
            Expr::Lam { .. } | Expr::ILam { .. } | Expr::Iota { .. } | Expr::Rho { .. } => TOP,
            Expr::Pi { cod, .. } | Expr::All { cod, .. } => {
                if cod.has_bound(0) {
                    TOP
                } else {
                    ARROW
                }
            }
            Expr::Eq(..) => {
                if prec > EQUATION {
                    // braces make it an atom
                    out.push('{');
                    self.go(e, EQUATION, out);
                    out.push('}');
                    return;
                }
                EQUATION
            }
            Expr::App(..) | Expr::EApp(..) | Expr::TApp(..) | Expr::Sym(_) => APP,
            _ => ATOM,
        };
        if need < prec {
            out.push('(');
            self.go(e, TOP, out);
            out.push(')');
            return;
        }
        match e {
            Expr::Bound(i) => {
                let name = self
                    .env
                    .len()
                    .checked_sub(i + 1)
                    .map(|k| self.env[k].clone())
                    .unwrap_or_else(|| format!("?b{i}"));
                out.push_str(&name);
            }
            Expr::Free(x) => out.push_str(&(self.free_name)(*x)),
            Expr::Ref(r) => out.push_str(r),
            Expr::Star => out.push_str(self.sym(Sym::Star)),
            Expr::Lam { name, ann, body } => {
                self.binder(Sym::Lambda, name.as_str(), ann.as_deref(), body, out)
            }
            Expr::ILam { name, ann, body } => {
                self.binder(Sym::BigLambda, name.as_str(), ann.as_deref(), body, out)
            }
            Expr::Pi { name, dom, cod } => {
                if cod.has_bound(0) {
                    self.binder(Sym::Pi, name.as_str(), Some(dom), cod, out)
                } else {
                    self.arrow(Sym::Arrow, dom, cod, out)
                }
            }
            Expr::All { name, dom, cod } => {
                if cod.has_bound(0) {
                    self.binder(Sym::Forall, name.as_str(), Some(dom), cod, out)
                } else {
                    self.arrow(Sym::ErasedArrow, dom, cod, out)
                }
            }
            Expr::Iota { name, fst, snd } => {
                self.binder(Sym::Iota, name.as_str(), Some(fst), snd, out)
            }
            Expr::Eq(a, b) => {
                self.go(a, APP, out);
                out.push(' ');
                out.push_str(self.sym(Sym::Equiv));
                out.push(' ');
                self.go(b, APP, out);
            }
            Expr::App(f, a) => {
                self.go(f, APP, out);
                out.push(' ');
                self.go(a, ATOM, out);
            }
            Expr::EApp(f, a) => {
                self.go(f, APP, out);
                out.push_str(" -");
                self.go(a, ATOM, out);
            }
            Expr::TApp(f, a) => {
                self.go(f, APP, out);
                out.push(' ');
                out.push_str(self.sym(Sym::CDot));
                out.push(' ');
                self.go(a, ATOM, out);
            }
            Expr::Pair(a, b) => {
                out.push_str("[ ");
                self.go(a, TOP, out);
                out.push_str(" , ");
                self.go(b, TOP, out);
                out.push_str(" ]");
            }
            Expr::Proj(t, side) => {
                self.go(t, ATOM, out);
                out.push_str(match side {
                    Side::First => ".1",
                    Side::Second => ".2",
                });
            }
            Expr::Beta(None) => out.push_str(self.sym(Sym::Beta)),
            Expr::Beta(Some(t)) => {
                out.push_str(self.sym(Sym::Beta));
                out.push('{');
                self.go(t, TOP, out);
                out.push('}');
            }
            Expr::Rho { plus, proof, body } => {
                out.push_str(self.sym(if *plus { Sym::RhoPlus } else { Sym::Rho }));
                out.push(' ');
                self.go(proof, APP, out);
                out.push_str(" - ");
                self.go(body, TOP, out);
            }
            Expr::Sym(q) => {
                out.push_str(self.sym(Sym::Sigma));
                out.push(' ');
                self.go(q, ATOM, out);
            }
        }
    }
}

fn is_reserved(name: &str) -> bool {
    matches!(name, "Pi" | "forall" | "iota" | "rho" | "beta")
}
