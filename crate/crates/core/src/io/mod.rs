//! Text formats: ℝ-graph documents, scalar fields on 2-complexes, maps
//! between graphs, and DOT export.
//!
//! All formats are line oriented. Everything after `#` is a comment, and
//! values are exact rationals written `p/q`, as integers or as decimals.

mod dot;
mod field;
mod morphism;
mod rgraph;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::rational::Rational;

pub use dot::{export_dot, DotOptions};
pub use field::{complex_of_graph, parse_field, reeb_of_complex, FieldError, KCell, ReebOfComplex, ScalarField2};
pub use morphism::{emit_morphism, parse_morphism};
pub use rgraph::{emit_rgraph, normalize, parse_rgraph};

/// A problem in a document, with the 1-based line it was found on when
/// there is one.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: Option<usize>,
    pub message: String,
}

impl ParseError {
    pub(crate) fn at(line: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: Some(line),
            message: message.into(),
        }
    }

    pub(crate) fn whole(message: impl Into<String>) -> ParseError {
        ParseError {
            line: None,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(n) => write!(f, "line {n}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

/// Nonblank lines with comments removed, as `(line number, words)`.
pub(crate) fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let words: Vec<&str> = body.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

pub(crate) fn value(line: usize, word: &str) -> Result<Rational, ParseError> {
    Rational::from_str(word).map_err(|e| ParseError::at(line, e.to_string()))
}

/// Checks the argument count of a record.
pub(crate) fn arity(line: usize, words: &[&str], n: usize, usage: &str) -> Result<(), ParseError> {
    if words.len() == n + 1 {
        Ok(())
    } else {
        Err(ParseError::at(line, format!("expected `{usage}`")))
    }
}
