//! Space specifications: `B5/P{2,4} x A3/P{1}`, `G2/B`.

use std::collections::BTreeSet;
use std::fmt;

use homlines_core::{CartanType, DynkinDiagram, Family, MarkedDiagram, ProductSpace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("no simple Lie algebra of type {family}{rank}")]
    Rank { family: Family, rank: usize },
    #[error("node {node} is out of range 1..={rank} for {family}{rank}")]
    NodeOutOfRange { family: Family, rank: usize, node: usize },
    #[error("node {node} is marked twice in {family}{rank}")]
    DuplicateMark { family: Family, rank: usize, node: usize },
}

/// A parsed space together with the text it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceSpec {
    pub source: String,
    pub space: ProductSpace,
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_space(&self.space))
    }
}

/// Canonical text: factors joined by ` x `, `/B` when every node is marked.
pub fn format_space(x: &ProductSpace) -> String {
    x.factors()
        .iter()
        .map(format_factor)
        .collect::<Vec<_>>()
        .join(" x ")
}

pub fn format_factor(m: &MarkedDiagram) -> String {
    if m.is_borel() && m.diagram().rank() > 1 {
        format!("{}/B", m.diagram())
    } else {
        m.to_string()
    }
}

pub fn parse_space(text: &str) -> Result<SpaceSpec, SpecError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let mut factors = vec![p.factor()?];
    loop {
        p.skip_ws();
        match p.peek() {
            None => break,
            Some('x') | Some('×') => {
                p.pos += 1;
                factors.push(p.factor()?);
            }
            Some(c) => return Err(p.error(format!("expected 'x' or end of input, found '{c}'"))),
        }
    }
    Ok(SpaceSpec {
        source: text.to_string(),
        space: ProductSpace::new(factors),
    })
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, message: String) -> SpecError {
        SpecError::Parse {
            position: self.pos,
            message,
        }
    }

    fn expect(&mut self, want: char) -> Result<(), SpecError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{want}', found '{c}'"))),
            None => Err(self.error(format!("expected '{want}', found end of input"))),
        }
    }

    fn int(&mut self) -> Result<usize, SpecError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number".into()));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().map_err(|_| SpecError::Parse {
            position: start,
            message: format!("number {digits} is too large"),
        })
    }

    fn factor(&mut self) -> Result<MarkedDiagram, SpecError> {
        self.skip_ws();
        let family = match self.peek().and_then(Family::from_letter) {
            Some(f) => f,
            None => return Err(self.error("expected a family letter A-G".into())),
        };
        self.pos += 1;
        let rank = self.int()?;
        if !CartanType::is_supported(family, rank) {
            return Err(SpecError::Rank { family, rank });
        }
        let diagram = DynkinDiagram::build(family, rank).map_err(|_| SpecError::Rank { family, rank })?;
        self.expect('/')?;
        self.skip_ws();
        match self.peek() {
            Some('B') => {
                self.pos += 1;
                return Ok(MarkedDiagram::borel(diagram));
            }
            Some('P') => self.pos += 1,
            _ => return Err(self.error("expected 'P{' or 'B'".into())),
        }
        self.expect('{')?;
        let mut marks = BTreeSet::new();
        loop {
            let node = self.int()?;
            if node == 0 || node > rank {
                return Err(SpecError::NodeOutOfRange { family, rank, node });
            }
            if !marks.insert(node) {
                return Err(SpecError::DuplicateMark { family, rank, node });
            }
            self.skip_ws();
            match self.peek() {
                Some(',') => self.pos += 1,
                Some('}') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.error("expected ',' or '}'".into())),
            }
        }
        Ok(MarkedDiagram::new(diagram, marks).expect("marks validated above"))
    }
}
