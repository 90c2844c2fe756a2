//! Recursive-descent parser for the formula language.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! iff     := implies ("<->" iff)?
//! implies := or ("->" implies)?           right associative
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "!" unary | atom | "T" | "F" | "(" iff ")"
//! ```
//!
//! Atoms match `[a-z][a-zA-Z0-9_]*`. Errors carry the byte offset of the
//! offending position.

use super::{AtomTable, Formula, LogicError};

struct Parser<'a, 't> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    table: &'t mut AtomTable,
}

/// Parse `text` against a closed table (unknown atoms are errors).
pub fn parse_formula(text: &str, table: &AtomTable) -> Result<Formula, LogicError> {
    assert!(!table.is_open(), "open tables mutate during parsing; use parse_formula_into");
    let mut scratch = table.clone();
    parse_formula_into(text, &mut scratch)
}

/// Parse `text`, registering unseen atoms when the table is open.
pub fn parse_formula_into(text: &str, table: &mut AtomTable) -> Result<Formula, LogicError> {
    let mut p = Parser { text, bytes: text.as_bytes(), pos: 0, table };
    p.skip_ws();
    let f = p.iff()?;
    p.skip_ws();
    if p.pos < p.bytes.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(f)
}

impl Parser<'_, '_> {
    fn syntax(&self, message: &str) -> LogicError {
        LogicError::Syntax { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula, LogicError> {
        let lhs = self.implies()?;
        self.skip_ws();
        if self.eat("<->") {
            self.skip_ws();
            let rhs = self.iff()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula, LogicError> {
        let lhs = self.or()?;
        self.skip_ws();
        // "->" but not the first half of "<->"; "<" cannot start here anyway.
        if self.eat("->") {
            self.skip_ws();
            let rhs = self.implies()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.and()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'|') {
                self.pos += 1;
                self.skip_ws();
                let rhs = self.and()?;
                lhs = Formula::or(lhs, rhs);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn and(&mut self) -> Result<Formula, LogicError> {
        let mut lhs = self.unary()?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'&') {
                self.pos += 1;
                self.skip_ws();
                let rhs = self.unary()?;
                lhs = Formula::and(lhs, rhs);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Formula, LogicError> {
        self.skip_ws();
        match self.peek() {
            Some(b'!') => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.iff()?;
                self.skip_ws();
                if self.peek() == Some(b')') {
                    self.pos += 1;
                    Ok(inner)
                } else {
                    Err(self.syntax("expected `)`"))
                }
            }
            Some(c) if c.is_ascii_uppercase() => {
                let start = self.pos;
                let word = self.take_word().to_string();
                match word.as_str() {
                    "T" => Ok(Formula::True),
                    "F" => Ok(Formula::False),
                    other => {
                        let message = format!(
                            "unknown constant `{other}` (atoms are lowercase; constants are T and F)"
                        );
                        self.pos = start;
                        Err(self.syntax(&message))
                    }
                }
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                let word = self.take_word().to_string();
                let id = self.table.register(&word, start)?;
                Ok(Formula::Atom(id))
            }
            Some(c) => Err(self.syntax(&format!("unexpected character `{}`", c as char))),
            None => Err(self.syntax("expected a formula")),
        }
    }

    fn take_word(&mut self) -> &str {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
        {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }
}
