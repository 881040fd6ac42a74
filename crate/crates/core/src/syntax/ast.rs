//! Resolved syntax shared by terms, types and kinds.
//!
//! Bound variables are de Bruijn indices; variables of the ambient typing
//! context are [`FreeId`]s (locally nameless). Binder names are kept as
//! [`Hint`]s that never take part in equality, so derived `PartialEq` on
//! [`Expr`] is α-equivalence.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// Identifier of a context variable opened by the checker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeId(pub u32);

impl FreeId {
    /// Stands in for an implicitly bound variable that leaked into an
    /// erasure. Only terms rejected by the implicit-product side condition
    /// ever mention it.
    pub const ERASED: FreeId = FreeId(u32::MAX);
}

/// A printing name for a binder. Ignored by equality and hashing.
#[derive(Clone)]
pub struct Hint(pub Arc<str>);

impl Hint {
    pub fn new(name: &str) -> Self {
        Hint(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl PartialEq for Hint {
    fn eq(&self, _: &Hint) -> bool {
        true
    }
}

impl Eq for Hint {}

impl Hash for Hint {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}

impl fmt::Debug for Hint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

/// Which component of an intersection a projection selects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    First,
    Second,
}

pub type RcExpr = Arc<Expr>;

/// Annotated terms, types and kinds in one tree. Which of the three an
/// expression is follows from where it occurs; the checker enforces it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Bound(usize),
    Free(FreeId),
    /// Reference to an earlier top-level definition.
    Ref(Arc<str>),
    Star,
    /// `λ x . t` or `λ x : T . t`; also type-level abstraction.
    Lam {
        name: Hint,
        ann: Option<RcExpr>,
        body: RcExpr,
    },
    /// `Λ x . t`, erased abstraction.
    ILam {
        name: Hint,
        ann: Option<RcExpr>,
        body: RcExpr,
    },
    /// `Π x : A . B` (and `A ➔ B`); also kind arrows.
    Pi {
        name: Hint,
        dom: RcExpr,
        cod: RcExpr,
    },
    /// `∀ x : A . B` (and `A ➾ B`).
    All {
        name: Hint,
        dom: RcExpr,
        cod: RcExpr,
    },
    /// `ι x : A . B`, dependent intersection.
    Iota {
        name: Hint,
        fst: RcExpr,
        snd: RcExpr,
    },
    /// `{ t ≃ t' }`.
    Eq(RcExpr, RcExpr),
    /// Explicit application; at the type level, a type applied to a term.
    App(RcExpr, RcExpr),
    /// `t -s`.
    EApp(RcExpr, RcExpr),
    /// `t · T`.
    TApp(RcExpr, RcExpr),
    Pair(RcExpr, RcExpr),
    Proj(RcExpr, Side),
    /// `β` or `β{t}`.
    Beta(Option<RcExpr>),
    /// `ρ q - t` (`plus` for `ρ+`).
    Rho {
        plus: bool,
        proof: RcExpr,
        body: RcExpr,
    },
    /// `ς q`.
    Sym(RcExpr),
}

impl Expr {
    pub fn rc(self) -> RcExpr {
        Arc::new(self)
    }

    pub fn app(f: RcExpr, a: RcExpr) -> RcExpr {
        Expr::App(f, a).rc()
    }

    /// Syntactic kind test: `★` or a `Π` ending in `★`.
    pub fn is_kind(&self) -> bool {
        match self {
            Expr::Star => true,
            Expr::Pi { cod, .. } => cod.is_kind(),
            _ => false,
        }
    }

    /// Whether bound index `index` (relative to this node) occurs.
    pub fn has_bound(&self, index: usize) -> bool {
        match self {
            Expr::Bound(i) => *i == index,
            Expr::Free(_) | Expr::Ref(_) | Expr::Star | Expr::Beta(None) => false,
            Expr::Lam { ann, body, .. } | Expr::ILam { ann, body, .. } => {
                ann.as_ref().is_some_and(|a| a.has_bound(index)) || body.has_bound(index + 1)
            }
            Expr::Pi { dom, cod, .. } | Expr::All { dom, cod, .. } => {
                dom.has_bound(index) || cod.has_bound(index + 1)
            }
            Expr::Iota { fst, snd, .. } => fst.has_bound(index) || snd.has_bound(index + 1),
            Expr::Eq(a, b)
            | Expr::App(a, b)
            | Expr::EApp(a, b)
            | Expr::TApp(a, b)
            | Expr::Pair(a, b) => a.has_bound(index) || b.has_bound(index),
            Expr::Rho { proof, body, .. } => proof.has_bound(index) || body.has_bound(index),
            Expr::Proj(e, _) | Expr::Sym(e) | Expr::Beta(Some(e)) => e.has_bound(index),
        }
    }

    /// Whether context variable `id` occurs anywhere.
    pub fn has_free(&self, id: FreeId) -> bool {
        let mut found = false;
        self.visit(&mut |e| {
            if let Expr::Free(x) = e {
                found |= *x == id;
            }
        });
        found
    }

    /// Pre-order traversal of every node.
    pub fn visit(&self, f: &mut impl FnMut(&Expr)) {
        f(self);
        match self {
            Expr::Bound(_) | Expr::Free(_) | Expr::Ref(_) | Expr::Star | Expr::Beta(None) => {}
            Expr::Lam { ann, body, .. } | Expr::ILam { ann, body, .. } => {
                if let Some(a) = ann {
                    a.visit(f);
                }
                body.visit(f);
            }
            Expr::Pi { dom, cod, .. } | Expr::All { dom, cod, .. } => {
                dom.visit(f);
                cod.visit(f);
            }
            Expr::Iota { fst, snd, .. } => {
                fst.visit(f);
                snd.visit(f);
            }
            Expr::Eq(a, b)
            | Expr::App(a, b)
            | Expr::EApp(a, b)
            | Expr::TApp(a, b)
            | Expr::Pair(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Expr::Rho { proof, body, .. } => {
                proof.visit(f);
                body.visit(f);
            }
            Expr::Proj(e, _) | Expr::Sym(e) | Expr::Beta(Some(e)) => e.visit(f),
        }
    }

    /// Replace bound index `depth` (and nothing else) by `value`, which must
    /// be locally closed.
    pub fn open_at(&self, depth: usize, value: &RcExpr) -> RcExpr {
        self.map_vars(
            depth,
            &mut |i, d| {
                if i == d {
                    Some(value.clone())
                } else {
                    None
                }
            },
            &mut |_, _| None,
        )
    }

    /// Instantiate the outermost dangling bound variable with `value`.
    pub fn instantiate(&self, value: &RcExpr) -> RcExpr {
        self.open_at(0, value)
    }

    /// Turn context variable `id` back into a bound variable at `depth`.
    pub fn close(&self, id: FreeId, depth: usize) -> RcExpr {
        self.map_vars(depth, &mut |_, _| None, &mut |x, d| {
            if x == id {
                Some(Expr::Bound(d).rc())
            } else {
                None
            }
        })
    }

    fn map_vars(
        &self,
        depth: usize,
        on_bound: &mut impl FnMut(usize, usize) -> Option<RcExpr>,
        on_free: &mut impl FnMut(FreeId, usize) -> Option<RcExpr>,
    ) -> RcExpr {
        macro_rules! go {
            ($e:expr, $d:expr) => {
                $e.map_vars($d, on_bound, on_free)
            };
        }
        let e = match self {
            Expr::Bound(i) => return on_bound(*i, depth).unwrap_or_else(|| self.clone().rc()),
            Expr::Free(x) => return on_free(*x, depth).unwrap_or_else(|| self.clone().rc()),
            Expr::Ref(_) | Expr::Star | Expr::Beta(None) => return self.clone().rc(),
            Expr::Lam { name, ann, body } => Expr::Lam {
                name: name.clone(),
                ann: ann.as_ref().map(|a| go!(a, depth)),
                body: go!(body, depth + 1),
            },
            Expr::ILam { name, ann, body } => Expr::ILam {
                name: name.clone(),
                ann: ann.as_ref().map(|a| go!(a, depth)),
                body: go!(body, depth + 1),
            },
            Expr::Pi { name, dom, cod } => Expr::Pi {
                name: name.clone(),
                dom: go!(dom, depth),
                cod: go!(cod, depth + 1),
            },
            Expr::All { name, dom, cod } => Expr::All {
                name: name.clone(),
                dom: go!(dom, depth),
                cod: go!(cod, depth + 1),
            },
            Expr::Iota { name, fst, snd } => Expr::Iota {
                name: name.clone(),
                fst: go!(fst, depth),
                snd: go!(snd, depth + 1),
            },
            Expr::Eq(a, b) => Expr::Eq(go!(a, depth), go!(b, depth)),
            Expr::App(a, b) => Expr::App(go!(a, depth), go!(b, depth)),
            Expr::EApp(a, b) => Expr::EApp(go!(a, depth), go!(b, depth)),
            Expr::TApp(a, b) => Expr::TApp(go!(a, depth), go!(b, depth)),
            Expr::Pair(a, b) => Expr::Pair(go!(a, depth), go!(b, depth)),
            Expr::Proj(e, s) => Expr::Proj(go!(e, depth), *s),
            Expr::Beta(Some(e)) => Expr::Beta(Some(go!(e, depth))),
            Expr::Rho { plus, proof, body } => Expr::Rho {
                plus: *plus,
                proof: go!(proof, depth),
                body: go!(body, depth),
            },
            Expr::Sym(e) => Expr::Sym(go!(e, depth)),
        };
        e.rc()
    }
}

/// One top-level `name ◂ classifier = body .` declaration.
#[derive(Clone, Debug, PartialEq)]
pub struct Decl {
    pub name: Arc<str>,
    pub classifier: RcExpr,
    pub body: RcExpr,
    pub line: usize,
}

impl Decl {
    /// A declaration whose classifier is a kind defines a type.
    pub fn is_type_def(&self) -> bool {
        self.classifier.is_kind()
    }
}

/// Checks attached to a signature by `#assert-…` directives.
#[derive(Clone, Debug, PartialEq)]
pub enum Assertion {
    /// The erasure of the term is convertible with `λ x . x`.
    Identity(RcExpr),
    /// The erasure of the term is *not* convertible with `λ x . x`.
    NotIdentity(RcExpr),
    /// The erasure of `term` is convertible with `expected`.
    ErasesTo { term: RcExpr, expected: RcExpr },
    /// The two erasures are convertible.
    ErasureEq(RcExpr, RcExpr),
    /// The declaration must be rejected, optionally with a given error class.
    Fails { class: Option<String>, decl: Decl },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Directive {
    pub assertion: Assertion,
    /// Source text after the directive keyword, for reports.
    pub text: String,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Item {
    Decl(Decl),
    Directive(Directive),
}
