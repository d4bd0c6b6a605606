use super::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Assoc {
    Left,
    Right,
    Non,
}

/// The fixed infix table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Infix {
    Imp,
    Equiv,
    Eq,
    Le,
    Plus,
    Times,
}

impl Infix {
    pub(crate) const ALL: [Infix; 6] = [
        Infix::Imp,
        Infix::Equiv,
        Infix::Eq,
        Infix::Le,
        Infix::Plus,
        Infix::Times,
    ];

    /// Name of the constant the operator stands for.
    pub(crate) fn constant(self) -> &'static str {
        match self {
            Infix::Imp => crate::term::IMP,
            Infix::Equiv => "==",
            Infix::Eq => "=",
            Infix::Le => "<=",
            Infix::Plus => "+",
            Infix::Times => "*",
        }
    }

    pub(crate) fn symbol(self) -> &'static str {
        match self {
            Infix::Imp => "==>",
            other => other.constant(),
        }
    }

    pub(crate) fn precedence(self) -> u32 {
        match self {
            Infix::Imp => 25,
            Infix::Equiv => 40,
            Infix::Eq | Infix::Le => 50,
            Infix::Plus => 65,
            Infix::Times => 70,
        }
    }

    pub(crate) fn assoc(self) -> Assoc {
        match self {
            Infix::Imp => Assoc::Right,
            Infix::Plus | Infix::Times => Assoc::Left,
            Infix::Equiv | Infix::Eq | Infix::Le => Assoc::Non,
        }
    }

    pub(crate) fn from_constant(name: &str) -> Option<Infix> {
        Infix::ALL.into_iter().find(|op| op.constant() == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Schematic(String),
    Wildcard,
    Hole,
    Lambda,
    MetaAll,
    Dot,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Op(Infix),
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(n) => format!("identifier `{n}`"),
            Tok::Schematic(n) => format!("schematic `?{n}`"),
            Tok::Wildcard => "`_`".into(),
            Tok::Hole => "hole".into(),
            Tok::Lambda => "`%`".into(),
            Tok::MetaAll => "`!!`".into(),
            Tok::Dot => "`.`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Op(op) => format!("`{}`", op.symbol()),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
    /// Byte offset into the lexed text.
    pub offset: usize,
}

pub(crate) fn is_ident_char(c: char) -> bool {
    (c.is_alphanumeric() && c != 'λ') || c == '_' || c == '\''
}

/// Whether `s` lexes as a single identifier token.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some('_') => s.len() > 1 && s.chars().all(is_ident_char),
        Some(c) if is_ident_char(c) && c != '\'' => chars.all(is_ident_char),
        _ => false,
    }
}

pub(crate) struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
    offset: usize,
}

impl<'a> Lexer<'a> {
    pub(crate) fn new(text: &'a str, line: usize, column: usize) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line,
            column,
            offset: 0,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        self.offset += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.chars.peek() == Some(&c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == '#' {
                while let Some(&c) = self.chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn ident_tail(&mut self, mut s: String) -> String {
        while let Some(&c) = self.chars.peek() {
            if !is_ident_char(c) {
                break;
            }
            s.push(c);
            self.bump();
        }
        s
    }

    pub(crate) fn tokenize(mut self) -> Result<Vec<Token>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_trivia();
            let (line, column, offset) = (self.line, self.column, self.offset);
            let err = |msg: String| ParseError::new(line, column, ParseErrorKind::Syntax(msg));
            let Some(c) = self.bump() else {
                out.push(Token {
                    tok: Tok::Eof,
                    line,
                    column,
                    offset,
                });
                return Ok(out);
            };
            let tok = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '.' => Tok::Dot,
                ']' => Tok::RBracket,
                '[' => {
                    while matches!(self.chars.peek(), Some(c) if *c != '\n' && c.is_whitespace()) {
                        self.bump();
                    }
                    if self.eat(']') {
                        Tok::Hole
                    } else {
                        Tok::LBracket
                    }
                }
                '□' => Tok::Hole,
                '%' | '\\' | 'λ' => Tok::Lambda,
                '⋀' => Tok::MetaAll,
                '!' => {
                    if self.eat('!') {
                        Tok::MetaAll
                    } else {
                        return Err(err("expected `!!`".into()));
                    }
                }
                '⟹' => Tok::Op(Infix::Imp),
                '≡' => Tok::Op(Infix::Equiv),
                '≤' => Tok::Op(Infix::Le),
                '+' => Tok::Op(Infix::Plus),
                '*' => Tok::Op(Infix::Times),
                '=' => {
                    if self.eat('=') {
                        if self.eat('>') {
                            Tok::Op(Infix::Imp)
                        } else {
                            Tok::Op(Infix::Equiv)
                        }
                    } else {
                        Tok::Op(Infix::Eq)
                    }
                }
                '<' => {
                    if self.eat('=') {
                        Tok::Op(Infix::Le)
                    } else {
                        return Err(err("expected `<=`".into()));
                    }
                }
                '?' => {
                    let name = self.ident_tail(String::new());
                    if !is_identifier(&name) {
                        return Err(err("expected a name after `?`".into()));
                    }
                    Tok::Schematic(name)
                }
                '_' => {
                    let s = self.ident_tail("_".into());
                    if s == "_" {
                        Tok::Wildcard
                    } else {
                        Tok::Ident(s)
                    }
                }
                c if is_ident_char(c) && c != '\'' => Tok::Ident(self.ident_tail(c.to_string())),
                other => return Err(err(format!("unexpected character `{other}`"))),
            };
            out.push(Token {
                tok,
                line,
                column,
                offset,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        Lexer::new(s, 1, 1)
            .tokenize()
            .unwrap()
            .into_iter()
            .map(|t| t.tok)
            .collect()
    }

    #[test]
    fn operators_longest_match() {
        assert_eq!(
            toks("a ==> b == c = d <= e"),
            vec![
                Tok::Ident("a".into()),
                Tok::Op(Infix::Imp),
                Tok::Ident("b".into()),
                Tok::Op(Infix::Equiv),
                Tok::Ident("c".into()),
                Tok::Op(Infix::Eq),
                Tok::Ident("d".into()),
                Tok::Op(Infix::Le),
                Tok::Ident("e".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn holes_and_lists() {
        assert_eq!(
            toks("[[ ], a]"),
            vec![
                Tok::LBracket,
                Tok::Hole,
                Tok::Comma,
                Tok::Ident("a".into()),
                Tok::RBracket,
                Tok::Eof
            ]
        );
        assert_eq!(toks("□ _ _x"), vec![Tok::Hole, Tok::Wildcard, Tok::Ident("_x".into()), Tok::Eof]);
    }

    #[test]
    fn comments_and_positions() {
        let ts = Lexer::new("# c\n  x", 1, 1).tokenize().unwrap();
        assert_eq!((ts[0].line, ts[0].column), (2, 3));
    }

    #[test]
    fn lambda_is_not_an_identifier() {
        assert_eq!(toks("λx"), vec![Tok::Lambda, Tok::Ident("x".into()), Tok::Eof]);
    }

    #[test]
    fn identifier_check() {
        assert!(is_identifier("x1'"));
        assert!(is_identifier("0"));
        assert!(is_identifier("_x"));
        assert!(!is_identifier("_"));
        assert!(!is_identifier("+"));
        assert!(!is_identifier(""));
    }
}
