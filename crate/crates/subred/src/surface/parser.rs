//! Recursive-descent parser producing validated `Program`s.

use std::fmt;

use super::lexer::{lex, LexError, Tok};
use super::{
    Atom, Clause, DeclError, FuncDecl, Mode, PredDecl, Program, Query, SignatureTable, Span, Term,
};
use crate::typesys::{Constructor, SubtypeEdge, TypeExpr};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Syntax { span: Span, expected: String, found: String },
    Lex { span: Span, message: String },
    Decl(DeclError),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { span, expected, found } => {
                write!(f, "{span}: expected {expected}, found {found}")
            }
            ParseError::Lex { span, message } => write!(f, "{span}: {message}"),
            ParseError::Decl(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ParseError {}

impl From<LexError> for ParseError {
    fn from(e: LexError) -> Self {
        ParseError::Lex { span: e.span, message: e.message }
    }
}

impl From<DeclError> for ParseError {
    fn from(e: DeclError) -> Self {
        ParseError::Decl(e)
    }
}

/// Parse and validate a program file.
pub fn parse_program(input: &str) -> Result<Program, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser { toks, pos: 0 };

    let mut ctors = Vec::new();
    let mut edges = Vec::new();
    let mut funcs = Vec::new();
    let mut preds = Vec::new();
    let mut raw_clauses = Vec::new();

    while !p.at_end() {
        match p.peek() {
            Some(Tok::Keyword(k)) if k == "kind" => {
                p.advance();
                let name = p.expect_upper("constructor name")?;
                p.expect(&Tok::Slash, "'/'")?;
                let arity = p.expect_number_usize("arity")?;
                p.expect(&Tok::Dot, "'.'")?;
                ctors.push(Constructor { name, arity });
            }
            Some(Tok::Keyword(k)) if k == "sub" => {
                p.advance();
                let lo = p.expect_upper("constructor name")?;
                p.expect(&Tok::Less, "'<'")?;
                let hi = p.expect_upper("constructor name")?;
                p.expect_keyword("via")?;
                p.expect(&Tok::LBracket, "'['")?;
                let mut injection = Vec::new();
                if p.peek() != Some(&Tok::RBracket) {
                    loop {
                        let i = p.expect_number_usize("argument position")?;
                        let span = p.prev_span();
                        if i == 0 {
                            return Err(ParseError::Syntax {
                                span,
                                expected: "a 1-based argument position".into(),
                                found: "0".into(),
                            });
                        }
                        injection.push(i - 1);
                        if p.peek() == Some(&Tok::Comma) {
                            p.advance();
                        } else {
                            break;
                        }
                    }
                }
                p.expect(&Tok::RBracket, "']'")?;
                p.expect(&Tok::Dot, "'.'")?;
                edges.push(SubtypeEdge { lo, hi, injection });
            }
            Some(Tok::Keyword(k)) if k == "func" => {
                p.advance();
                let name = p.expect_upper("function name")?;
                p.expect(&Tok::Colon, "':'")?;
                let mut arg_types = Vec::new();
                if p.peek() != Some(&Tok::Arrow) {
                    loop {
                        arg_types.push(p.parse_type()?);
                        if p.peek() == Some(&Tok::Comma) {
                            p.advance();
                        } else {
                            break;
                        }
                    }
                }
                p.expect(&Tok::Arrow, "'->'")?;
                let result = p.parse_type()?;
                p.expect(&Tok::Dot, "'.'")?;
                funcs.push(FuncDecl { name, arg_types, result });
            }
            Some(Tok::Keyword(k)) if k == "pred" => {
                p.advance();
                let name = p.expect_upper("predicate name")?;
                p.expect(&Tok::Colon, "':'")?;
                let mut arg_types = Vec::new();
                if !matches!(p.peek(), Some(Tok::Keyword(k)) if k == "mode") {
                    loop {
                        arg_types.push(p.parse_type()?);
                        if p.peek() == Some(&Tok::Comma) {
                            p.advance();
                        } else {
                            break;
                        }
                    }
                }
                p.expect_keyword("mode")?;
                p.expect(&Tok::LParen, "'('")?;
                let mut modes = Vec::new();
                if p.peek() != Some(&Tok::RParen) {
                    loop {
                        match p.next_tok("mode (in or out)")? {
                            (Tok::Keyword(k), _) if k == "in" => modes.push(Mode::In),
                            (Tok::Keyword(k), _) if k == "out" => modes.push(Mode::Out),
                            (other, span) => {
                                return Err(ParseError::Syntax {
                                    span,
                                    expected: "'in' or 'out'".into(),
                                    found: other.to_string(),
                                })
                            }
                        }
                        if p.peek() == Some(&Tok::Comma) {
                            p.advance();
                        } else {
                            break;
                        }
                    }
                }
                p.expect(&Tok::RParen, "')'")?;
                p.expect(&Tok::Dot, "'.'")?;
                preds.push(PredDecl { name, arg_types, modes });
            }
            _ => {
                raw_clauses.push(p.parse_clause()?);
            }
        }
    }

    let mut signature = SignatureTable::build(ctors, edges, funcs, preds)?;

    // Literals and list sugar are resolved against the signature, then every
    // clause is validated.
    for clause in &raw_clauses {
        register_atom_literals(&mut signature, &clause.head)?;
        for atom in &clause.body {
            register_atom_literals(&mut signature, atom)?;
        }
        signature.validate_atom(&clause.head)?;
        for atom in &clause.body {
            signature.validate_atom(atom)?;
        }
        for (_, ty) in &clause.annotations {
            ty.well_formed(&signature.order).map_err(DeclError::Signature)?;
        }
    }

    Ok(Program { signature, clauses: raw_clauses })
}

/// Parse a query string such as `?- Fact(3, x), Sqrt(x, y).` (the leading
/// `?-` and trailing dot are optional) against an existing signature.
pub fn parse_query(input: &str, signature: &mut SignatureTable) -> Result<Query, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser { toks, pos: 0 };
    if p.peek() == Some(&Tok::QueryNeck) {
        p.advance();
    }
    let mut atoms = vec![p.parse_atom()?];
    while p.peek() == Some(&Tok::Comma) {
        p.advance();
        atoms.push(p.parse_atom()?);
    }
    let annotations = if matches!(p.peek(), Some(Tok::Keyword(k)) if k == "where") {
        p.advance();
        p.parse_annotations()?
    } else {
        Vec::new()
    };
    if p.peek() == Some(&Tok::Dot) {
        p.advance();
    }
    p.expect_end()?;
    for atom in &atoms {
        register_atom_literals(signature, atom)?;
        signature.validate_atom(atom)?;
    }
    for (_, ty) in &annotations {
        ty.well_formed(&signature.order).map_err(DeclError::Signature)?;
    }
    Ok(Query { atoms, annotations })
}

/// Parse a bare term against an existing signature.
pub fn parse_term(input: &str, signature: &mut SignatureTable) -> Result<Term, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser { toks, pos: 0 };
    let term = p.parse_term()?;
    p.expect_end()?;
    register_term_literals(signature, &term, Span::default())?;
    signature.validate_term(&term, Span::default())?;
    Ok(term)
}

/// Parse a bare type expression against an existing signature.
pub fn parse_type(input: &str, signature: &SignatureTable) -> Result<TypeExpr, ParseError> {
    let toks = lex(input)?;
    let mut p = Parser { toks, pos: 0 };
    let ty = p.parse_type()?;
    p.expect_end()?;
    ty.well_formed(&signature.order).map_err(DeclError::Signature)?;
    Ok(ty)
}

fn register_atom_literals(sig: &mut SignatureTable, atom: &Atom) -> Result<(), DeclError> {
    for arg in &atom.args {
        register_term_literals(sig, arg, atom.span)?;
    }
    Ok(())
}

fn register_term_literals(sig: &mut SignatureTable, term: &Term, span: Span) -> Result<(), DeclError> {
    match term {
        Term::Var(_) => Ok(()),
        Term::App(f, args) => {
            if f.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                sig.register_literal(f, span)?;
            }
            for a in args {
                register_term_literals(sig, a, span)?;
            }
            Ok(())
        }
    }
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl Parser {
    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_span(&self) -> Span {
        self.toks
            .get(self.pos)
            .map(|(_, s)| *s)
            .unwrap_or_else(|| self.prev_span())
    }

    fn prev_span(&self) -> Span {
        if self.pos == 0 {
            Span { line: 1, col: 1 }
        } else {
            self.toks[self.pos - 1].1
        }
    }

    fn advance(&mut self) {
        self.pos += 1;
    }

    fn next_tok(&mut self, expected: &str) -> Result<(Tok, Span), ParseError> {
        match self.toks.get(self.pos) {
            Some((t, s)) => {
                let out = (t.clone(), *s);
                self.pos += 1;
                Ok(out)
            }
            None => Err(ParseError::Syntax {
                span: self.prev_span(),
                expected: expected.into(),
                found: "end of input".into(),
            }),
        }
    }

    fn expect(&mut self, tok: &Tok, expected: &str) -> Result<Span, ParseError> {
        let (t, span) = self.next_tok(expected)?;
        if &t == tok {
            Ok(span)
        } else {
            Err(ParseError::Syntax { span, expected: expected.into(), found: t.to_string() })
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let (t, span) = self.next_tok(&format!("'{kw}'"))?;
        match t {
            Tok::Keyword(k) if k == kw => Ok(()),
            other => Err(ParseError::Syntax {
                span,
                expected: format!("'{kw}'"),
                found: other.to_string(),
            }),
        }
    }

    fn expect_upper(&mut self, expected: &str) -> Result<String, ParseError> {
        let (t, span) = self.next_tok(expected)?;
        match t {
            Tok::Upper(name) => Ok(name),
            other => Err(ParseError::Syntax {
                span,
                expected: expected.into(),
                found: other.to_string(),
            }),
        }
    }

    fn expect_lower(&mut self, expected: &str) -> Result<String, ParseError> {
        let (t, span) = self.next_tok(expected)?;
        match t {
            Tok::Lower(name) => Ok(name),
            other => Err(ParseError::Syntax {
                span,
                expected: expected.into(),
                found: other.to_string(),
            }),
        }
    }

    fn expect_number_usize(&mut self, expected: &str) -> Result<usize, ParseError> {
        let (t, span) = self.next_tok(expected)?;
        match t {
            Tok::Number(n) if !n.contains('.') => n.parse().map_err(|_| ParseError::Syntax {
                span,
                expected: expected.into(),
                found: n,
            }),
            other => Err(ParseError::Syntax {
                span,
                expected: expected.into(),
                found: other.to_string(),
            }),
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(ParseError::Syntax {
                span: self.peek_span(),
                expected: "end of input".into(),
                found: self.peek().unwrap().to_string(),
            })
        }
    }

    fn parse_type(&mut self) -> Result<TypeExpr, ParseError> {
        let (t, span) = self.next_tok("a type")?;
        match t {
            Tok::Lower(u) => Ok(TypeExpr::Param(u)),
            Tok::Upper(k) => {
                let mut args = Vec::new();
                if self.peek() == Some(&Tok::LParen) {
                    self.advance();
                    loop {
                        args.push(self.parse_type()?);
                        if self.peek() == Some(&Tok::Comma) {
                            self.advance();
                        } else {
                            break;
                        }
                    }
                    self.expect(&Tok::RParen, "')'")?;
                }
                Ok(TypeExpr::Comp(k, args))
            }
            other => Err(ParseError::Syntax {
                span,
                expected: "a type".into(),
                found: other.to_string(),
            }),
        }
    }

    fn parse_term(&mut self) -> Result<Term, ParseError> {
        let (t, span) = self.next_tok("a term")?;
        match t {
            Tok::Lower(x) => Ok(Term::Var(x)),
            Tok::Number(n) => Ok(Term::App(n, Vec::new())),
            Tok::Upper(f) => {
                let mut args = Vec::new();
                if self.peek() == Some(&Tok::LParen) {
                    self.advance();
                    loop {
                        args.push(self.parse_term()?);
                        if self.peek() == Some(&Tok::Comma) {
                            self.advance();
                        } else {
                            break;
                        }
                    }
                    self.expect(&Tok::RParen, "')'")?;
                }
                Ok(Term::App(f, args))
            }
            Tok::LBracket => self.parse_list(span),
            other => Err(ParseError::Syntax {
                span,
                expected: "a term".into(),
                found: other.to_string(),
            }),
        }
    }

    /// `[]`, `[a, b]`, `[a, b | t]` desugar to `Cons`/`Nil`.
    fn parse_list(&mut self, _open: Span) -> Result<Term, ParseError> {
        if self.peek() == Some(&Tok::RBracket) {
            self.advance();
            return Ok(Term::constant("Nil"));
        }
        let mut elems = vec![self.parse_term()?];
        let mut tail = None;
        loop {
            match self.peek() {
                Some(Tok::Comma) => {
                    self.advance();
                    elems.push(self.parse_term()?);
                }
                Some(Tok::Bar) => {
                    self.advance();
                    tail = Some(self.parse_term()?);
                    break;
                }
                _ => break,
            }
        }
        self.expect(&Tok::RBracket, "']'")?;
        let mut term = tail.unwrap_or_else(|| Term::constant("Nil"));
        for e in elems.into_iter().rev() {
            term = Term::App("Cons".into(), vec![e, term]);
        }
        Ok(term)
    }

    fn parse_atom(&mut self) -> Result<Atom, ParseError> {
        let span = self.peek_span();
        let pred = self.expect_upper("a predicate name")?;
        let mut args = Vec::new();
        if self.peek() == Some(&Tok::LParen) {
            self.advance();
            if self.peek() != Some(&Tok::RParen) {
                loop {
                    args.push(self.parse_term()?);
                    if self.peek() == Some(&Tok::Comma) {
                        self.advance();
                    } else {
                        break;
                    }
                }
            }
            self.expect(&Tok::RParen, "')'")?;
        }
        Ok(Atom { pred, args, span })
    }

    fn parse_annotations(&mut self) -> Result<Vec<(String, TypeExpr)>, ParseError> {
        let mut out = Vec::new();
        loop {
            let var = self.expect_lower("a variable name")?;
            self.expect(&Tok::Colon, "':'")?;
            let ty = self.parse_type()?;
            out.push((var, ty));
            if self.peek() == Some(&Tok::Comma) {
                self.advance();
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn parse_clause(&mut self) -> Result<Clause, ParseError> {
        let span = self.peek_span();
        let head = self.parse_atom()?;
        let mut body = Vec::new();
        if self.peek() == Some(&Tok::Neck) {
            self.advance();
            // An empty body after ':-' is permitted: `p(x) :- .`
            if !matches!(self.peek(), Some(Tok::Dot) | Some(Tok::Keyword(_))) {
                body.push(self.parse_atom()?);
                while self.peek() == Some(&Tok::Comma) {
                    self.advance();
                    body.push(self.parse_atom()?);
                }
            }
        }
        let annotations = if matches!(self.peek(), Some(Tok::Keyword(k)) if k == "where") {
            self.advance();
            self.parse_annotations()?
        } else {
            Vec::new()
        };
        self.expect(&Tok::Dot, "'.'")?;
        Ok(Clause { head, body, annotations, span })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typesys::TypeExpr;

    pub const FACT_SQRT: &str = "\
% factorial and square root as ground facts
kind Int/0.
kind Real/0.
sub Int < Real via [].
pred Fact : Int, Int mode (in, out).
pred Sqrt : Real, Real mode (in, out).
Fact(3, 6).
Sqrt(6, 2.449).
";

    #[test]
    fn parses_fact_sqrt_fixture() {
        let program = parse_program(FACT_SQRT).unwrap();
        assert_eq!(program.signature.preds.len(), 2);
        assert_eq!(program.clauses.len(), 2);
        assert!(program.signature.order.ctor_le("Int", "Real"));
        // literals registered with their kinds
        assert_eq!(program.signature.func("3").unwrap().result, TypeExpr::atom("Int"));
        assert_eq!(program.signature.func("2.449").unwrap().result, TypeExpr::atom("Real"));
    }

    #[test]
    fn transparency_violation_reported() {
        let text = "kind Int/0.\nfunc F : u -> Int.\n";
        match parse_program(text) {
            Err(ParseError::Decl(DeclError::TransparencyViolation { func, param })) => {
                assert_eq!(func, "F");
                assert_eq!(param, "u");
            }
            other => panic!("expected transparency violation, got {other:?}"),
        }
    }

    #[test]
    fn reversed_subtype_edge_rejected() {
        let ok = "kind List/1.\nkind Anylist/0.\nsub List < Anylist via [].\n";
        assert!(parse_program(ok).is_ok());
        let bad = "kind List/1.\nkind Anylist/0.\nsub Anylist < List via [1].\n";
        match parse_program(bad) {
            Err(ParseError::Decl(DeclError::Signature(
                crate::typesys::SignatureError::ArityOrderViolation { .. },
            ))) => {}
            other => panic!("expected arity violation, got {other:?}"),
        }
    }

    #[test]
    fn literal_without_kind_rejected() {
        let text = "kind Real/0.\npred P : Real mode (in).\nP(3).\n";
        match parse_program(text) {
            Err(ParseError::Decl(DeclError::LiteralWithoutKind { kind, .. })) => {
                assert_eq!(kind, "Int");
            }
            other => panic!("expected literal error, got {other:?}"),
        }
    }

    #[test]
    fn list_sugar_expands() {
        let text = "\
kind List/1.
kind Int/0.
func Nil : -> List(u).
func Cons : u, List(u) -> List(u).
pred P : List(Int) mode (in).
P([1, 2]).
P([x | t]).
";
        let program = parse_program(text).unwrap();
        let fact = &program.clauses[0];
        assert_eq!(
            fact.head.args[0],
            Term::app(
                "Cons",
                vec![
                    Term::constant("1"),
                    Term::app("Cons", vec![Term::constant("2"), Term::constant("Nil")])
                ]
            )
        );
    }

    #[test]
    fn syntax_error_has_position() {
        match parse_program("kind Int/0.\nkind /1.\n") {
            Err(ParseError::Syntax { span, .. }) => assert_eq!(span.line, 2),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn undeclared_predicate_rejected() {
        match parse_program("kind Int/0.\nP(x).\n") {
            Err(ParseError::Decl(DeclError::UndeclaredPredicate { name, .. })) => {
                assert_eq!(name, "P")
            }
            other => panic!("expected undeclared predicate, got {other:?}"),
        }
    }

    #[test]
    fn equality_predicate_reserved() {
        // '=' cannot even be written; an atom with that name is rejected if
        // constructed programmatically.
        let program = parse_program("kind Int/0.\npred P : Int mode (in).\nP(3).\n").unwrap();
        let atom = Atom::new(crate::surface::EQUALITY_PRED, vec![]);
        assert!(matches!(
            program.signature.validate_atom(&atom),
            Err(DeclError::ReservedPredicate { .. })
        ));
    }

    #[test]
    fn clause_annotations_parse() {
        let text = "\
kind List/1.
func Nil : -> List(u).
pred P : List(u) mode (out).
P(y) where y : List(v).
";
        let program = parse_program(text).unwrap();
        assert_eq!(program.clauses[0].annotations.len(), 1);
    }

    #[test]
    fn query_parsing() {
        let mut program = parse_program(FACT_SQRT).unwrap();
        let q = parse_query("?- Fact(3, x), Sqrt(x, y).", &mut program.signature).unwrap();
        assert_eq!(q.atoms.len(), 2);
        assert!(parse_query("?- Missing(x).", &mut program.signature).is_err());
    }

    #[test]
    fn roundtrip_render_parse() {
        let program = parse_program(FACT_SQRT).unwrap();
        let rendered = program.render();
        let reparsed = parse_program(&rendered).unwrap();
        assert_eq!(program.signature, reparsed.signature);
        assert_eq!(program.clauses.len(), reparsed.clauses.len());
        for (a, b) in program.clauses.iter().zip(reparsed.clauses.iter()) {
            assert_eq!(a.head.to_string(), b.head.to_string());
            assert_eq!(a.body.len(), b.body.len());
        }
    }
}
