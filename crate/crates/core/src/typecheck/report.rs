use std::ops::Range;

use super::{Checker, TypeError};
use crate::erasure::erase;
use crate::normalize::{conv, is_identity, normalize, NormError};
use crate::signature::Signature;
use crate::syntax::{show, Assertion, Decl, Directive, Item};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Ok,
    TypeError(TypeError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeclReport {
    pub name: String,
    pub line: usize,
    pub status: Status,
    pub classifier: String,
    /// Normal form of the erasure, for term definitions.
    pub erasure: Option<String>,
    pub fuel_used: u64,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssertionReport {
    pub line: usize,
    /// Directive keyword, e.g. `assert-id`.
    pub directive: &'static str,
    pub subject: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReportItem {
    Decl(DeclReport),
    Assertion(AssertionReport),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CheckReport {
    pub items: Vec<ReportItem>,
}

impl CheckReport {
    /// True iff every declaration checked and every assertion held.
    pub fn ok(&self) -> bool {
        self.failures() == 0
    }

    pub fn failures(&self) -> usize {
        self.items
            .iter()
            .filter(|i| match i {
                ReportItem::Decl(d) => d.status != Status::Ok,
                ReportItem::Assertion(a) => !a.passed,
            })
            .count()
    }

    pub fn decl(&self, name: &str) -> Option<&DeclReport> {
        self.items.iter().find_map(|i| match i {
            ReportItem::Decl(d) if d.name == name => Some(d),
            _ => None,
        })
    }

    pub fn assertions(&self) -> impl Iterator<Item = &AssertionReport> {
        self.items.iter().filter_map(|i| match i {
            ReportItem::Assertion(a) => Some(a),
            _ => None,
        })
    }
}

/// Check every item of the signature in order.
pub fn check_signature(sig: &Signature, fuel: u64) -> CheckReport {
    check_items(sig, 0..sig.items().len(), fuel)
}

/// Check a contiguous range of items; earlier items are assumed checked.
pub fn check_items(sig: &Signature, range: Range<usize>, fuel: u64) -> CheckReport {
    let items = sig.items()[range]
        .iter()
        .map(|item| match item {
            Item::Decl(d) => ReportItem::Decl(check_decl(sig, d, fuel)),
            Item::Directive(dir) => ReportItem::Assertion(check_directive(sig, dir, fuel)),
        })
        .collect();
    CheckReport { items }
}

fn check_decl(sig: &Signature, d: &Decl, fuel: u64) -> DeclReport {
    let mut checker = Checker::new(sig, fuel);
    let status = match checker.check_decl(d) {
        Ok(()) => Status::Ok,
        Err(e) => Status::TypeError(e),
    };
    let mut fuel_used = checker.fuel_used();
    let erasure = (!d.is_type_def()).then(|| {
        let def = sig.get(&d.name).expect("declared");
        let mut n = crate::normalize::Normalizer::new(sig, fuel);
        let r = n.run(&def.erased);
        fuel_used += n.steps();
        match r {
            Ok(nf) => nf.to_string(),
            Err(NormError::OutOfFuel { steps, .. }) => {
                format!("(no normal form within {steps} steps)")
            }
        }
    });
    DeclReport {
        name: d.name.to_string(),
        line: d.line,
        status,
        classifier: show(&d.classifier),
        erasure,
        fuel_used,
        warnings: checker.take_warnings(),
    }
}

fn verdict(r: Result<bool, NormError>, yes: &str, no: &str) -> (bool, String) {
    match r {
        Ok(true) => (true, yes.to_string()),
        Ok(false) => (false, no.to_string()),
        Err(e) => (false, e.to_string()),
    }
}

fn check_directive(sig: &Signature, dir: &Directive, fuel: u64) -> AssertionReport {
    let (directive, subject, (passed, detail)) = match &dir.assertion {
        Assertion::Identity(e) => {
            let v = is_identity(sig, &erase(e), fuel);
            (
                "assert-id",
                show(e),
                with_nf(sig, e, fuel, verdict(v, "identity", "not the identity")),
            )
        }
        Assertion::NotIdentity(e) => {
            let v = is_identity(sig, &erase(e), fuel).map(|b| !b);
            (
                "assert-not-id",
                show(e),
                with_nf(sig, e, fuel, verdict(v, "not the identity", "identity")),
            )
        }
        Assertion::ErasesTo { term, expected } => {
            let v = conv(sig, &erase(term), &erase(expected), fuel);
            let out = verdict(v, "erases as stated", "erases differently");
            ("assert-erase", show(term), with_nf(sig, term, fuel, out))
        }
        Assertion::ErasureEq(a, b) => {
            let v = conv(sig, &erase(a), &erase(b), fuel);
            let subject = format!("{} {}", show(a), show(b));
            (
                "assert-eq",
                subject,
                verdict(v, "convertible", "not convertible"),
            )
        }
        Assertion::Fails { class, decl } => {
            let mut checker = Checker::new(sig, fuel);
            let out = match (checker.check_decl(decl), class) {
                (Ok(()), _) => (false, "declaration was accepted".to_string()),
                (Err(e), Some(c)) if e.class() != c => (
                    false,
                    format!("rejected as {} instead of {c}: {e}", e.class()),
                ),
                (Err(e), _) => (true, format!("rejected as {}: {e}", e.class())),
            };
            ("assert-fail", decl.name.to_string(), out)
        }
    };
    AssertionReport {
        line: dir.line,
        directive,
        subject,
        passed,
        detail,
    }
}

fn with_nf(
    sig: &Signature,
    e: &crate::syntax::Expr,
    fuel: u64,
    (ok, msg): (bool, String),
) -> (bool, String) {
    match normalize(sig, &erase(e), fuel) {
        Ok(nf) => (ok, format!("{msg}: {nf}")),
        Err(_) => (ok, msg),
    }
}
