use std::fmt;

use thiserror::Error;

/// Propositional formula over named atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    /// Atom names in order of first occurrence.
    pub fn atoms(&self) -> Vec<String> {
        fn walk(f: &Formula, out: &mut Vec<String>) {
            match f {
                Formula::True | Formula::False => {}
                Formula::Atom(a) => {
                    if !out.contains(a) {
                        out.push(a.clone());
                    }
                }
                Formula::Not(a) => walk(a, out),
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(_) => 5,
            Formula::True | Formula::False | Formula::Atom(_) => 6,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, sub: &Formula, parens: bool) -> fmt::Result {
            if parens {
                write!(f, "({sub})")
            } else {
                write!(f, "{sub}")
            }
        }
        let prec = self.precedence();
        match self {
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Atom(a) => f.write_str(a),
            Formula::Not(a) => {
                f.write_str("~")?;
                child(f, a, a.precedence() < prec)
            }
            // left-associative
            Formula::And(a, b) | Formula::Or(a, b) => {
                let op = if matches!(self, Formula::And(..)) { " & " } else { " | " };
                child(f, a, a.precedence() < prec)?;
                f.write_str(op)?;
                child(f, b, b.precedence() <= prec)
            }
            // right-associative
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                let op = if matches!(self, Formula::Implies(..)) { " -> " } else { " <-> " };
                child(f, a, a.precedence() <= prec)?;
                f.write_str(op)?;
                child(f, b, b.precedence() < prec)
            }
        }
    }
}

/// Formula syntax error; offsets are byte positions in the input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty formula")]
    Empty,
    #[error("unexpected `{found}` at offset {offset}")]
    Unexpected { offset: usize, found: String },
    #[error("unexpected end of input at offset {offset}")]
    UnexpectedEnd { offset: usize },
    #[error("unbalanced parenthesis at offset {offset}")]
    UnbalancedParen { offset: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    True,
    False,
    Atom(String),
}

impl Token {
    fn text(&self) -> String {
        match self {
            Token::Not => "~".into(),
            Token::And => "&".into(),
            Token::Or => "|".into(),
            Token::Implies => "->".into(),
            Token::Iff => "<->".into(),
            Token::LParen => "(".into(),
            Token::RParen => ")".into(),
            Token::True => "true".into(),
            Token::False => "false".into(),
            Token::Atom(a) => a.clone(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let token = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => Token::Not,
            b'&' => Token::And,
            b'|' => Token::Or,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Token::Implies
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Token::Iff
            }
            b'a'..=b'z' => {
                while i + 1 < bytes.len() && matches!(bytes[i + 1], b'a'..=b'z' | b'0'..=b'9' | b'_') {
                    i += 1;
                }
                match &text[start..=i] {
                    "true" => Token::True,
                    "false" => Token::False,
                    name => Token::Atom(name.to_string()),
                }
            }
            _ => {
                let found = text[start..].chars().next().map(String::from).unwrap_or_default();
                return Err(ParseError::Unexpected { offset: start, found });
            }
        };
        tokens.push((start, token));
        i += 1;
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == Some(token) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.implication()?;
        if self.eat(&Token::Iff) {
            Ok(Formula::iff(lhs, self.iff()?))
        } else {
            Ok(lhs)
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat(&Token::Implies) {
            Ok(Formula::implies(lhs, self.implication()?))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Token::Or) {
            lhs = Formula::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Token::And) {
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if self.eat(&Token::Not) {
            return Ok(Formula::not(self.unary()?));
        }
        let offset = self.offset();
        let Some(token) = self.peek().cloned() else {
            return Err(ParseError::UnexpectedEnd { offset });
        };
        self.pos += 1;
        match token {
            Token::True => Ok(Formula::True),
            Token::False => Ok(Formula::False),
            Token::Atom(a) => Ok(Formula::Atom(a)),
            Token::LParen => {
                let inner = self.iff()?;
                if self.eat(&Token::RParen) {
                    Ok(inner)
                } else if self.peek().is_none() {
                    Err(ParseError::UnbalancedParen { offset })
                } else {
                    Err(self.unexpected())
                }
            }
            Token::RParen => Err(ParseError::UnbalancedParen { offset }),
            other => Err(ParseError::Unexpected { offset, found: other.text() }),
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.tokens.get(self.pos) {
            Some((offset, Token::RParen)) => ParseError::UnbalancedParen { offset: *offset },
            Some((offset, t)) => ParseError::Unexpected { offset: *offset, found: t.text() },
            None => ParseError::UnexpectedEnd { offset: self.end },
        }
    }
}

/// Parses the ASCII formula grammar: atoms `[a-z][a-z0-9_]*`, constants
/// `true`/`false`, operators `~ & | -> <->` in decreasing precedence, `->`
/// and `<->` associating to the right.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut parser = Parser { tokens, pos: 0, end: text.len() };
    let f = parser.iff()?;
    if parser.pos < parser.tokens.len() {
        return Err(parser.unexpected());
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Formula as F;

    fn a(n: &str) -> Formula {
        F::atom(n)
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(parse_formula("p & ~q").unwrap(), F::and(a("p"), F::not(a("q"))));
        assert_eq!(parse_formula("p | ~p").unwrap(), F::or(a("p"), F::not(a("p"))));
        assert_eq!(
            parse_formula("p -> q -> r").unwrap(),
            F::implies(a("p"), F::implies(a("q"), a("r")))
        );
    }

    #[test]
    fn precedence_ladder() {
        assert_eq!(
            parse_formula("~p & q | r -> s <-> t").unwrap(),
            F::iff(F::implies(F::or(F::and(F::not(a("p")), a("q")), a("r")), a("s")), a("t"))
        );
        assert_eq!(
            parse_formula("a <-> b <-> c").unwrap(),
            F::iff(a("a"), F::iff(a("b"), a("c")))
        );
        assert_eq!(parse_formula("a & b & c").unwrap(), F::and(F::and(a("a"), a("b")), a("c")));
        assert_eq!(parse_formula(" (true)|false ").unwrap(), F::or(F::True, F::False));
        assert_eq!(parse_formula("x_1").unwrap(), a("x_1"));
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(parse_formula(""), Err(ParseError::Empty));
        assert_eq!(parse_formula("   "), Err(ParseError::Empty));
        assert_eq!(parse_formula("(p & q"), Err(ParseError::UnbalancedParen { offset: 0 }));
        assert_eq!(parse_formula("p & q)"), Err(ParseError::UnbalancedParen { offset: 5 }));
        assert_eq!(parse_formula("p &"), Err(ParseError::UnexpectedEnd { offset: 3 }));
        assert_eq!(
            parse_formula("p # q"),
            Err(ParseError::Unexpected { offset: 2, found: "#".into() })
        );
        assert_eq!(
            parse_formula("p q"),
            Err(ParseError::Unexpected { offset: 2, found: "q".into() })
        );
        assert_eq!(
            parse_formula("P"),
            Err(ParseError::Unexpected { offset: 0, found: "P".into() })
        );
        assert_eq!(
            parse_formula("p ∧ q"),
            Err(ParseError::Unexpected { offset: 2, found: "∧".into() })
        );
        assert_eq!(
            parse_formula("p - q"),
            Err(ParseError::Unexpected { offset: 2, found: "-".into() })
        );
    }

    #[test]
    fn printing_uses_minimal_parentheses() {
        for (src, printed) in [
            ("p & ~q", "p & ~q"),
            ("(p -> q) -> r", "(p -> q) -> r"),
            ("p -> (q -> r)", "p -> q -> r"),
            ("~(p | q)", "~(p | q)"),
            ("p & (q | r)", "p & (q | r)"),
            ("(p & q) | r", "p & q | r"),
            ("p | (q | r)", "p | (q | r)"),
        ] {
            assert_eq!(parse_formula(src).unwrap().to_string(), printed);
        }
    }

    #[test]
    fn atoms_in_first_occurrence_order() {
        assert_eq!(parse_formula("q & (p | q) -> r").unwrap().atoms(), vec!["q", "p", "r"]);
    }
}
