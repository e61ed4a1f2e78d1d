//! Surface syntax for products: `RH3(1) x CH3(2) x HH3(1)`.
//!
//! ```text
//! product  ::= space (' x ' space)*
//! space    ::= FIELD DIGITS '(' RATIONAL ')'
//! FIELD    ::= 'RH' | 'CH' | 'HH' | 'OH'
//! RATIONAL ::= INT | INT '/' INT
//! ```
//!
//! Columns in error messages are one-based character positions.
use num_bigint::BigInt;
use num_traits::Zero;

use crate::catalog::{CatalogError, Field, RankOneSpace};
use crate::rational::{self, Rational};
use crate::tableaux::ProductSpace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("invalid space at column {column}: {message}")]
    Semantic { column: usize, message: String },
}

impl ParseError {
    pub fn column(&self) -> usize {
        match self {
            ParseError::Syntax { column, .. } | ParseError::Semantic { column, .. } => *column,
        }
    }

    pub fn is_syntax(&self) -> bool {
        matches!(self, ParseError::Syntax { .. })
    }
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(input: &str) -> Self {
        Cursor {
            chars: input.chars().collect(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn syntax(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn found(&self) -> String {
        match self.peek() {
            Some(c) => format!("found `{c}`"),
            None => "found end of input".to_string(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{c}`, {}", self.found())))
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        let negative = self.peek() == Some('-');
        if negative {
            self.pos += 1;
        }
        let d = self.digits();
        if d.is_empty() {
            return Err(self.syntax(format!("expected an integer, {}", self.found())));
        }
        let v: BigInt = d.parse().expect("ascii digits");
        Ok(if negative { -v } else { v })
    }
}

fn space(cur: &mut Cursor) -> Result<RankOneSpace, ParseError> {
    let start = cur.pos + 1;
    let field = match (cur.peek(), cur.chars.get(cur.pos + 1)) {
        (Some(f), Some('H')) if "RCHO".contains(f) => {
            cur.pos += 2;
            Field::from_symbol(&f.to_string()).expect("checked")
        }
        _ => {
            return Err(cur.syntax(format!(
                "expected one of RH, CH, HH, OH, {}",
                cur.found()
            )))
        }
    };
    let d = cur.digits();
    if d.is_empty() {
        return Err(cur.syntax(format!("expected a dimension, {}", cur.found())));
    }
    let n: u32 = d.parse().map_err(|_| ParseError::Semantic {
        column: start,
        message: format!("dimension {d} is too large"),
    })?;
    cur.expect('(')?;
    let num = cur.int()?;
    let den = if cur.peek() == Some('/') {
        cur.pos += 1;
        cur.int()?
    } else {
        BigInt::from(1)
    };
    cur.expect(')')?;
    let semantic = |message: String| ParseError::Semantic {
        column: start,
        message,
    };
    if den.is_zero() {
        return Err(semantic("zero denominator in curvature".into()));
    }
    let curvature = Rational::new(num, den);
    RankOneSpace::new(field, n, curvature).map_err(|e| {
        semantic(match e {
            CatalogError::OctonionicDimension(_) => "octonionic dimension must be 2".into(),
            other => other.to_string(),
        })
    })
}

/// Parses a product specification. Surrounding whitespace is ignored;
/// factors must be separated by exactly ` x `.
pub fn parse_product(input: &str) -> Result<ProductSpace, ParseError> {
    let trimmed_start = input.len() - input.trim_start().len();
    let offset = input[..trimmed_start].chars().count();
    let mut cur = Cursor::new(input.trim());
    if cur.at_end() {
        return Err(ParseError::Syntax {
            column: offset + 1,
            message: "empty product".into(),
        });
    }
    let shift = |e: ParseError| match e {
        ParseError::Syntax { column, message } => ParseError::Syntax {
            column: column + offset,
            message,
        },
        ParseError::Semantic { column, message } => ParseError::Semantic {
            column: column + offset,
            message,
        },
    };
    let mut factors = vec![space(&mut cur).map_err(shift)?];
    while !cur.at_end() {
        for c in [' ', 'x', ' '] {
            cur.expect(c).map_err(|_| {
                shift(cur.syntax(format!("expected ` x ` between factors, {}", cur.found())))
            })?;
        }
        factors.push(space(&mut cur).map_err(shift)?);
    }
    ProductSpace::new(factors).map_err(|e| ParseError::Semantic {
        column: 1,
        message: e.to_string(),
    })
}

/// Canonical surface form of a single space, e.g. `RH2(4)`.
pub fn render_space(space: &RankOneSpace) -> String {
    format!(
        "{}H{}({})",
        space.field,
        space.n,
        rational::to_compact(&space.curvature)
    )
}

/// Canonical surface form of a product; inverse of [`parse_product`].
pub fn render_product(m: &ProductSpace) -> String {
    m.factors()
        .iter()
        .map(render_space)
        .collect::<Vec<_>>()
        .join(" x ")
}
