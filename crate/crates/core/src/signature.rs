//! Top-level definitions in source order.

use std::collections::{HashMap, HashSet};
use std::ops::Range;
use std::sync::{Arc, OnceLock};

use crate::erasure::{erase, RcPure};
use crate::syntax::{self, Decl, Item, ParseError, RcExpr};

/// A definition together with its erasure and a lazily computed normal form.
#[derive(Debug)]
pub struct Def {
    pub decl: Decl,
    pub erased: RcPure,
    pub(crate) nf: OnceLock<RcPure>,
}

#[derive(Debug, Default)]
pub struct Signature {
    items: Vec<Item>,
    names: HashSet<Arc<str>>,
    index: HashMap<Arc<str>, usize>,
    defs: Vec<Def>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut sig = Signature::new();
        sig.extend(text)?;
        Ok(sig)
    }

    /// Append the items of `text`, which may refer to everything already
    /// present. Returns the range of the new items. On error nothing changes.
    pub fn extend(&mut self, text: &str) -> Result<Range<usize>, ParseError> {
        let mut names = self.names.clone();
        let items = syntax::parse_items(text, &mut names)?;
        self.names = names;
        let start = self.items.len();
        for item in items {
            if let Item::Decl(d) = &item {
                self.index.insert(d.name.clone(), self.defs.len());
                self.defs.push(Def {
                    decl: d.clone(),
                    erased: erase(&d.body),
                    nf: OnceLock::new(),
                });
            }
            self.items.push(item);
        }
        Ok(start..self.items.len())
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn defs(&self) -> &[Def] {
        &self.defs
    }

    pub fn get(&self, name: &str) -> Option<&Def> {
        self.index.get(name).map(|&i| &self.defs[i])
    }

    pub fn names(&self) -> &HashSet<Arc<str>> {
        &self.names
    }

    pub fn parse_expr(&self, text: &str) -> Result<RcExpr, ParseError> {
        syntax::parse_expr(text, &self.names)
    }
}
