use std::collections::HashSet;
use std::sync::Arc;

use super::ast::{Assertion, Decl, Directive, Expr, Hint, Item, RcExpr, Side};
use super::lexer::{tokenize, Tok, Token};
use super::ParseError;

pub(crate) struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    end: usize,
    /// Enclosing binders, innermost last. `None` cannot be referenced.
    scope: Vec<Option<String>>,
    declared: &'a mut HashSet<Arc<str>>,
}

fn is_atom_start(tok: &Tok) -> bool {
    matches!(
        tok,
        Tok::Ident(_)
            | Tok::LParen
            | Tok::LBracket
            | Tok::LBrace
            | Tok::Beta
            | Tok::Star
            | Tok::Sym
    )
}

impl<'a> Parser<'a> {
    pub(crate) fn new(src: &str, declared: &'a mut HashSet<Arc<str>>) -> Result<Self, ParseError> {
        let toks = tokenize(src)?;
        let end = toks.len();
        Ok(Parser {
            toks,
            pos: 0,
            end,
            scope: Vec::new(),
            declared,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        if self.pos < self.end {
            Some(&self.toks[self.pos].tok)
        } else {
            None
        }
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        let i = self.pos + k;
        (i < self.end).then(|| &self.toks[i].tok)
    }

    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos.min(self.end)) {
            Some(t) if self.pos < self.end => (t.line, t.col),
            _ => self
                .toks
                .get(self.pos.saturating_sub(1))
                .map(|t| (t.line, t.col))
                .unwrap_or((1, 1)),
        }
    }

    pub(crate) fn unexpected(&self, expected: &str) -> ParseError {
        let (line, col) = self.here();
        match self.peek() {
            Some(tok) => ParseError::Unexpected {
                line,
                col,
                found: tok.to_string(),
                expected: expected.to_string(),
            },
            None => ParseError::UnexpectedEnd {
                line,
                expected: expected.to_string(),
            },
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.peek().cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.end
    }

    pub(crate) fn items(&mut self) -> Result<Vec<Item>, ParseError> {
        let mut items = Vec::new();
        while !self.at_end() {
            if let Some(Tok::Directive(_)) = self.peek() {
                items.push(Item::Directive(self.directive()?));
            } else {
                let decl = self.decl()?;
                if !self.declared.insert(decl.name.clone()) {
                    return Err(ParseError::Duplicate {
                        line: decl.line,
                        name: decl.name.to_string(),
                    });
                }
                items.push(Item::Decl(decl));
            }
        }
        Ok(items)
    }

    fn decl(&mut self) -> Result<Decl, ParseError> {
        let (line, _) = self.here();
        let name = self.ident()?;
        self.expect(Tok::Triangle, "`◂`")?;
        let classifier = self.expr()?;
        self.expect(Tok::Equals, "`=`")?;
        let body = self.expr()?;
        self.expect(Tok::Dot, "`.` ending the declaration")?;
        Ok(Decl {
            name: Arc::from(name.as_str()),
            classifier,
            body,
            line,
        })
    }

    fn directive(&mut self) -> Result<Directive, ParseError> {
        let Some(Tok::Directive(word)) = self.bump() else {
            unreachable!()
        };
        let line = self.toks[self.pos - 1].line;
        let start = self.pos;
        let assertion = if word == "assert-fail" {
            let class = match (self.peek(), self.peek_at(1)) {
                (Some(Tok::Ident(c)), Some(Tok::Ident(_))) => {
                    let c = c.clone();
                    self.pos += 1;
                    Some(c)
                }
                _ => None,
            };
            Assertion::Fails {
                class,
                decl: self.decl()?,
            }
        } else {
            // single-line directives
            let saved_end = self.end;
            let mut stop = self.pos;
            while stop < saved_end && self.toks[stop].line == line {
                stop += 1;
            }
            self.end = stop;
            let parsed = self.line_directive(&word);
            let done = self.at_end();
            let result = parsed.and_then(|a| {
                if done {
                    Ok(a)
                } else {
                    Err(self.unexpected("end of directive"))
                }
            });
            self.end = saved_end;
            result?
        };
        let text = self.toks[start..self.pos]
            .iter()
            .map(|t| super::printer::token_text(&t.tok))
            .collect::<Vec<_>>()
            .join(" ");
        Ok(Directive {
            assertion,
            text,
            line,
        })
    }

    fn line_directive(&mut self, word: &str) -> Result<Assertion, ParseError> {
        Ok(match word {
            "assert-id" => Assertion::Identity(self.expr()?),
            "assert-not-id" => Assertion::NotIdentity(self.expr()?),
            "assert-eq" => {
                let a = self.postfix()?;
                let b = self.postfix()?;
                Assertion::ErasureEq(a, b)
            }
            "assert-erase" => {
                let term = self.app()?;
                self.expect(Tok::Equals, "`=`")?;
                let expected = self.expr()?;
                Assertion::ErasesTo { term, expected }
            }
            other => {
                let (line, col) = self.here();
                return Err(ParseError::UnknownDirective {
                    line,
                    col,
                    name: other.to_string(),
                });
            }
        })
    }

    fn binder_name(&mut self) -> Result<String, ParseError> {
        self.ident()
    }

    fn push_scope(&mut self, name: &str) {
        self.scope.push(if name == "_" {
            None
        } else {
            Some(name.to_string())
        });
    }

    fn binder_body(&mut self, name: &str) -> Result<RcExpr, ParseError> {
        self.expect(Tok::Dot, "`.` after binder")?;
        self.push_scope(name);
        let body = self.expr();
        self.scope.pop();
        body
    }

    pub(crate) fn expr(&mut self) -> Result<RcExpr, ParseError> {
        match self.peek() {
            Some(Tok::Lambda) | Some(Tok::BigLambda) => {
                let implicit = self.bump() == Some(Tok::BigLambda);
                let name = self.binder_name()?;
                let ann = if self.peek() == Some(&Tok::Colon) {
                    self.pos += 1;
                    Some(self.expr()?)
                } else {
                    None
                };
                let body = self.binder_body(&name)?;
                let name = Hint::new(&name);
                Ok(if implicit {
                    Expr::ILam { name, ann, body }
                } else {
                    Expr::Lam { name, ann, body }
                }
                .rc())
            }
            Some(Tok::Pi) | Some(Tok::Forall) | Some(Tok::Iota) => {
                let head = self.bump().unwrap();
                let name = self.binder_name()?;
                self.expect(Tok::Colon, "`:`")?;
                let dom = self.expr()?;
                let cod = self.binder_body(&name)?;
                let name = Hint::new(&name);
                Ok(match head {
                    Tok::Pi => Expr::Pi { name, dom, cod },
                    Tok::Forall => Expr::All { name, dom, cod },
                    _ => Expr::Iota {
                        name,
                        fst: dom,
                        snd: cod,
                    },
                }
                .rc())
            }
            Some(Tok::Rho) | Some(Tok::RhoPlus) => {
                let plus = self.bump() == Some(Tok::RhoPlus);
                let proof = self.app()?;
                self.expect(Tok::Dash, "` - ` after the rewrite proof")?;
                let body = self.expr()?;
                Ok(Expr::Rho { plus, proof, body }.rc())
            }
            _ => self.arrow(),
        }
    }

    fn arrow(&mut self) -> Result<RcExpr, ParseError> {
        let lhs = self.equation()?;
        match self.peek() {
            Some(Tok::Arrow) | Some(Tok::ErasedArrow) => {
                let erased = self.bump() == Some(Tok::ErasedArrow);
                self.scope.push(None);
                let rhs = self.expr();
                self.scope.pop();
                let rhs = rhs?;
                let name = Hint::new("_");
                Ok(if erased {
                    Expr::All {
                        name,
                        dom: lhs,
                        cod: rhs,
                    }
                } else {
                    Expr::Pi {
                        name,
                        dom: lhs,
                        cod: rhs,
                    }
                }
                .rc())
            }
            _ => Ok(lhs),
        }
    }

    fn equation(&mut self) -> Result<RcExpr, ParseError> {
        let lhs = self.app()?;
        if self.peek() == Some(&Tok::Equiv) {
            self.pos += 1;
            let rhs = self.app()?;
            return Ok(Expr::Eq(lhs, rhs).rc());
        }
        Ok(lhs)
    }

    fn app(&mut self) -> Result<RcExpr, ParseError> {
        let mut head = self.postfix()?;
        loop {
            match self.peek() {
                Some(Tok::CDot) => {
                    self.pos += 1;
                    let arg = self.postfix()?;
                    head = Expr::TApp(head, arg).rc();
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let arg = self.postfix()?;
                    head = Expr::EApp(head, arg).rc();
                }
                Some(t) if is_atom_start(t) => {
                    let arg = self.postfix()?;
                    head = Expr::App(head, arg).rc();
                }
                _ => return Ok(head),
            }
        }
    }

    fn postfix(&mut self) -> Result<RcExpr, ParseError> {
        let mut e = self.atom()?;
        while let Some(Tok::Proj(k)) = self.peek() {
            let side = if *k == 1 { Side::First } else { Side::Second };
            self.pos += 1;
            e = Expr::Proj(e, side).rc();
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<RcExpr, ParseError> {
        let (line, col) = self.here();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.resolve(&name, line, col)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.expr()?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok(Expr::Pair(a, b).rc())
            }
            Some(Tok::LBrace) => {
                self.pos += 1;
                let a = self.app()?;
                self.expect(Tok::Equiv, "`≃`")?;
                let b = self.app()?;
                self.expect(Tok::RBrace, "`}`")?;
                Ok(Expr::Eq(a, b).rc())
            }
            Some(Tok::Beta) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::LBrace) {
                    self.pos += 1;
                    let e = self.expr()?;
                    self.expect(Tok::RBrace, "`}`")?;
                    Ok(Expr::Beta(Some(e)).rc())
                } else {
                    Ok(Expr::Beta(None).rc())
                }
            }
            Some(Tok::Star) => {
                self.pos += 1;
                Ok(Expr::Star.rc())
            }
            Some(Tok::Sym) => {
                self.pos += 1;
                let e = self.postfix()?;
                Ok(Expr::Sym(e).rc())
            }
            _ => Err(self.unexpected("an expression")),
        }
    }

    fn resolve(&self, name: &str, line: usize, col: usize) -> Result<RcExpr, ParseError> {
        if let Some(i) = self
            .scope
            .iter()
            .rev()
            .position(|b| b.as_deref() == Some(name))
        {
            return Ok(Expr::Bound(i).rc());
        }
        if self.declared.contains(name) {
            return Ok(Expr::Ref(Arc::from(name)).rc());
        }
        Err(ParseError::Unbound {
            line,
            col,
            name: name.to_string(),
        })
    }
}
