//! Recursive-descent parser for the CLI expression grammar.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := unary ('^' factor)?        (right-associative)
//! unary  := '-' unary | atom
//! atom   := number | 't' | 'u' | func '(' expr ')' | '(' expr ')'
//! func   := 'exp' | 'sin' | 'cos' | 'sqrt'
//! ```
//!
//! `u` is sugar for t^α/α, so user inputs stay α-generic. Offsets in
//! errors are 1-based byte positions.

use std::fmt;

use thiserror::Error;

use crate::calculus::FractionalOrder;

const MAX_SOURCE_LEN: usize = 4096;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: expected {}, found {found}", expected.join(" | "))]
    Syntax {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("unknown identifier `{name}` at byte {offset}; vocabulary: {vocabulary}")]
    UnknownIdentifier {
        offset: usize,
        name: String,
        vocabulary: String,
    },
    #[error("expression exceeds {MAX_SOURCE_LEN} bytes")]
    TooLong,
}

/// Evaluation failure pinned to the originating sub-expression.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("non-finite value in `{fragment}` at byte {offset} (t = {t:e})")]
pub struct EvalError {
    pub offset: usize,
    pub fragment: String,
    pub t: f64,
}

/// Which name plays the free variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variable {
    /// Time-domain grammar: `t` and `u`.
    Time,
    /// Frequency-domain grammar: `s` only (for rational transforms).
    Frequency,
}

impl Variable {
    fn vocabulary(self) -> &'static str {
        match self {
            Variable::Time => "t, u, exp, sin, cos, sqrt",
            Variable::Frequency => "s, exp, sin, cos, sqrt",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NodeKind {
    Number(f64),
    /// The free variable: `t` in time mode, `s` in frequency mode.
    Var,
    /// `u` = t^α/α.
    ConformableTime,
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, Box<Node>),
    Neg(Box<Node>),
    Exp(Box<Node>),
    Sin(Box<Node>),
    Cos(Box<Node>),
    Sqrt(Box<Node>),
}

/// AST node with its source byte range (0-based, half-open).
#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub kind: NodeKind,
    pub span: (usize, usize),
}

/// A parsed expression together with its source text.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpressionAst {
    root: Node,
    source: String,
}

impl ExpressionAst {
    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    /// Evaluate at time t with the session order α (resolves `u`).
    pub fn eval(&self, t: f64, alpha: FractionalOrder) -> Result<f64, EvalError> {
        self.eval_node(&self.root, t, alpha.u_of_t(t))
    }

    fn eval_node(&self, node: &Node, var: f64, u: f64) -> Result<f64, EvalError> {
        let v = match &node.kind {
            NodeKind::Number(x) => *x,
            NodeKind::Var => var,
            NodeKind::ConformableTime => u,
            NodeKind::Add(a, b) => self.eval_node(a, var, u)? + self.eval_node(b, var, u)?,
            NodeKind::Sub(a, b) => self.eval_node(a, var, u)? - self.eval_node(b, var, u)?,
            NodeKind::Mul(a, b) => self.eval_node(a, var, u)? * self.eval_node(b, var, u)?,
            NodeKind::Div(a, b) => self.eval_node(a, var, u)? / self.eval_node(b, var, u)?,
            NodeKind::Pow(a, b) => self.eval_node(a, var, u)?.powf(self.eval_node(b, var, u)?),
            NodeKind::Neg(a) => -self.eval_node(a, var, u)?,
            NodeKind::Exp(a) => self.eval_node(a, var, u)?.exp(),
            NodeKind::Sin(a) => self.eval_node(a, var, u)?.sin(),
            NodeKind::Cos(a) => self.eval_node(a, var, u)?.cos(),
            NodeKind::Sqrt(a) => self.eval_node(a, var, u)?.sqrt(),
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError {
                offset: node.span.0 + 1,
                fragment: self.source[node.span.0..node.span.1].to_string(),
                t: var,
            })
        }
    }
}

impl fmt::Display for ExpressionAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

/// Parse time-domain text over `t`/`u`.
pub fn parse_expression(text: &str) -> Result<ExpressionAst, ParseError> {
    parse_with(text, Variable::Time)
}

/// Parse frequency-domain text over `s`.
pub fn parse_frequency_expression(text: &str) -> Result<ExpressionAst, ParseError> {
    parse_with(text, Variable::Frequency)
}

fn parse_with(text: &str, var: Variable) -> Result<ExpressionAst, ParseError> {
    if text.len() > MAX_SOURCE_LEN {
        return Err(ParseError::TooLong);
    }
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        var,
    };
    parser.skip_ws();
    let root = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.bytes.len() {
        return Err(parser.syntax(&["end of input", "'+'", "'-'", "'*'", "'/'", "'^'"]));
    }
    Ok(ExpressionAst {
        root,
        source: text.to_string(),
    })
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    var: Variable,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.pos += 1;
        }
    }

    fn found_desc(&self) -> String {
        match self.peek() {
            None => "end of input".to_string(),
            Some(c) => format!("'{}'", c as char),
        }
    }

    fn syntax(&self, expected: &[&str]) -> ParseError {
        ParseError::Syntax {
            offset: self.pos + 1,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.found_desc(),
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let start = self.pos;
        let mut lhs = self.term()?;
        loop {
            self.skip_ws();
            let op = match self.peek() {
                Some(b'+') => NodeKind::Add as fn(Box<Node>, Box<Node>) -> NodeKind,
                Some(b'-') => NodeKind::Sub,
                _ => break,
            };
            self.pos += 1;
            self.skip_ws();
            let rhs = self.term()?;
            let span = (start, rhs.span.1);
            lhs = Node {
                kind: op(Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let start = self.pos;
        let mut lhs = self.factor()?;
        loop {
            self.skip_ws();
            let op = match self.peek() {
                Some(b'*') => NodeKind::Mul as fn(Box<Node>, Box<Node>) -> NodeKind,
                Some(b'/') => NodeKind::Div,
                _ => break,
            };
            self.pos += 1;
            self.skip_ws();
            let rhs = self.factor()?;
            let span = (start, rhs.span.1);
            lhs = Node {
                kind: op(Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Node, ParseError> {
        let start = self.pos;
        let base = self.unary()?;
        self.skip_ws();
        if self.eat(b'^') {
            self.skip_ws();
            let exponent = self.factor()?;
            let span = (start, exponent.span.1);
            return Ok(Node {
                kind: NodeKind::Pow(Box::new(base), Box::new(exponent)),
                span,
            });
        }
        Ok(base)
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.eat(b'-') {
            self.skip_ws();
            let inner = self.unary()?;
            let span = (start, inner.span.1);
            return Ok(Node {
                kind: NodeKind::Neg(Box::new(inner)),
                span,
            });
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.identifier(),
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let inner = self.expr()?;
                self.skip_ws();
                if !self.eat(b')') {
                    return Err(self.syntax(&["')'"]));
                }
                Ok(Node {
                    kind: inner.kind,
                    span: (start, self.pos),
                })
            }
            _ => Err(self.syntax(&["number", "'t'", "'u'", "function", "'('"])),
        }
    }

    fn number(&mut self) -> Result<Node, ParseError> {
        let start = self.pos;
        let mut saw_digit = false;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            saw_digit = true;
            self.pos += 1;
        }
        if self.eat(b'.') {
            while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                saw_digit = true;
                self.pos += 1;
            }
        }
        if !saw_digit {
            return Err(self.syntax(&["digit"]));
        }
        // optional exponent, only when followed by digits
        if matches!(self.peek(), Some(b'e' | b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.pos += 1;
                }
            } else {
                self.pos = mark;
            }
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let value: f64 = text.parse().map_err(|_| ParseError::Syntax {
            offset: start + 1,
            expected: vec!["number".to_string()],
            found: format!("'{text}'"),
        })?;
        Ok(Node {
            kind: NodeKind::Number(value),
            span: (start, self.pos),
        })
    }

    fn identifier(&mut self) -> Result<Node, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        let unknown = || ParseError::UnknownIdentifier {
            offset: start + 1,
            name: name.to_string(),
            vocabulary: self.var.vocabulary().to_string(),
        };
        match (name, self.var) {
            ("t", Variable::Time) => Ok(Node {
                kind: NodeKind::Var,
                span: (start, self.pos),
            }),
            ("u", Variable::Time) => Ok(Node {
                kind: NodeKind::ConformableTime,
                span: (start, self.pos),
            }),
            ("s", Variable::Frequency) => Ok(Node {
                kind: NodeKind::Var,
                span: (start, self.pos),
            }),
            ("exp" | "sin" | "cos" | "sqrt", _) => {
                self.skip_ws();
                if !self.eat(b'(') {
                    return Err(self.syntax(&["'('"]));
                }
                self.skip_ws();
                let arg = self.expr()?;
                self.skip_ws();
                if !self.eat(b')') {
                    return Err(self.syntax(&["')'"]));
                }
                let boxed = Box::new(arg);
                let kind = match name {
                    "exp" => NodeKind::Exp(boxed),
                    "sin" => NodeKind::Sin(boxed),
                    "cos" => NodeKind::Cos(boxed),
                    _ => NodeKind::Sqrt(boxed),
                };
                Ok(Node {
                    kind,
                    span: (start, self.pos),
                })
            }
            _ => Err(unknown()),
        }
    }
}
