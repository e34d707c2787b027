//! The line-oriented `.lcr` language.
//!
//! ```text
//! # comments run to the end of the line
//! ring A = Z 4
//! ring H = product Z 2 Z 2
//! hom psi : A -> H = reduce | diagonal | zero | identity | table [e, ...]
//! lcr R = halo_ext A H psi
//! lcr T = tables { carrier = [2, 2], mul = [e, ...], localmul = [e, ...], localid = e }
//! lcr U = tables { add = [..], mul = [..], localmul = [..] }
//! lcr Q = quotient R I
//! lcr S = ring A
//! lcr F = search [2, 2] 0
//! ideal I of R = gens { (2,0), ... } | halo | nilrad | zero
//! lcrhom f : R -> S = table [e, ...] | identity
//! ```
//!
//! An element `e` is either an index or a coordinate tuple `(a, b, ...)`.
//! Statements may span lines; each begins with its keyword. `localmul` is
//! indexed by halo position, in increasing element order.

use std::sync::Arc;

use crate::carrier::{Elem, FiniteCarrier};
use crate::construct::{halo_extension, small_rng_search};
use crate::ideal::{halo_ideal, ideal_generated, nilradical, zero_ideal};
use crate::morphism::RngHom;
use crate::quotient::quotient;
use crate::ring::{CommutativeRingTable, RingHom};
use crate::rng::LcrTable;
use crate::workspace::{axiom_failure, hom_failure, isqrt, Binding, DslError, Failure, Item, Workspace};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(usize),
    Sym(&'static str),
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: [&str; 11] = ["->", "=", ":", "[", "]", "{", "}", "(", ")", ",", ";"];

fn lex(text: &str) -> Result<Vec<Token>, DslError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let chars: Vec<char> = raw.chars().collect();
        let mut j = 0;
        while j < chars.len() {
            let c = chars[j];
            let col = j + 1;
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                j += 1;
            } else if c.is_ascii_digit() {
                let start = j;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let digits: String = chars[start..j].iter().collect();
                let value = digits.parse().map_err(|_| DslError::Syntax {
                    line,
                    col,
                    message: format!("integer `{digits}` is too large"),
                })?;
                out.push(Token { tok: Tok::Int(value), line, col });
            } else if c.is_alphabetic() || c == '_' {
                let start = j;
                while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_' || chars[j] == '\'') {
                    j += 1;
                }
                out.push(Token { tok: Tok::Ident(chars[start..j].iter().collect()), line, col });
            } else {
                let rest: String = chars[j..].iter().take(2).collect();
                let sym = SYMBOLS.iter().find(|s| rest.starts_with(**s)).ok_or_else(|| DslError::Syntax {
                    line,
                    col,
                    message: format!("unexpected character `{c}`"),
                })?;
                out.push(Token { tok: Tok::Sym(sym), line, col });
                j += sym.chars().count();
            }
        }
    }
    let line = text.lines().count().max(1);
    let col = text.lines().last().map_or(1, |l| l.chars().count() + 1);
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

/// An element literal before it is resolved against a carrier.
#[derive(Debug, Clone)]
enum Literal {
    Index(usize),
    Coords(Vec<usize>),
}

#[derive(Debug, Clone)]
struct Spanned<T> {
    value: T,
    line: usize,
    col: usize,
}

fn resolve(carrier: &FiniteCarrier, lit: &Spanned<Literal>) -> Result<Elem, DslError> {
    let err = |message: String| DslError::Syntax { line: lit.line, col: lit.col, message };
    match &lit.value {
        Literal::Index(i) if *i < carrier.order() => Ok(*i),
        Literal::Index(i) => Err(err(format!("element {i} is out of range for order {}", carrier.order()))),
        Literal::Coords(c) => carrier.from_coords(c).ok_or_else(|| err(format!("no element has coordinates {c:?}"))),
    }
}

fn resolve_all(carrier: &FiniteCarrier, lits: &[Spanned<Literal>]) -> Result<Vec<Elem>, DslError> {
    lits.iter().map(|l| resolve(carrier, l)).collect()
}

fn syntax_at(line: usize, col: usize, message: impl Into<String>) -> DslError {
    DslError::Syntax { line, col, message: message.into() }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    ws: Workspace,
}

/// Parses and eagerly builds every declaration.
pub fn parse(text: &str) -> Result<Workspace, DslError> {
    let mut p = Parser { tokens: lex(text)?, pos: 0, ws: Workspace::new() };
    while p.peek().tok != Tok::Eof {
        p.statement()?;
    }
    Ok(p.ws)
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn syntax<T>(&self, t: &Token, message: impl Into<String>) -> Result<T, DslError> {
        Err(syntax_at(t.line, t.col, message))
    }

    fn describe(t: &Token) -> String {
        match &t.tok {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of input".into(),
        }
    }

    fn ident(&mut self) -> Result<Spanned<String>, DslError> {
        let t = self.next();
        match t.tok {
            Tok::Ident(s) => Ok(Spanned { value: s, line: t.line, col: t.col }),
            _ => self.syntax(&t, format!("expected a name, found {}", Self::describe(&t))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), DslError> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) if s == kw => Ok(()),
            _ => self.syntax(&t, format!("expected `{kw}`, found {}", Self::describe(&t))),
        }
    }

    fn int(&mut self) -> Result<usize, DslError> {
        let t = self.next();
        match t.tok {
            Tok::Int(n) => Ok(n),
            _ => self.syntax(&t, format!("expected an integer, found {}", Self::describe(&t))),
        }
    }

    fn sym(&mut self, s: &'static str) -> Result<(), DslError> {
        let t = self.next();
        if t.tok == Tok::Sym(s) {
            Ok(())
        } else {
            self.syntax(&t, format!("expected `{s}`, found {}", Self::describe(&t)))
        }
    }

    fn eat(&mut self, s: &'static str) -> bool {
        if self.peek().tok == Tok::Sym(s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// A delimited, comma-separated list; a trailing comma is allowed.
    fn list<T>(
        &mut self,
        open: &'static str,
        close: &'static str,
        mut item: impl FnMut(&mut Self) -> Result<T, DslError>,
    ) -> Result<Vec<T>, DslError> {
        self.sym(open)?;
        let mut out = Vec::new();
        while !self.eat(close) {
            out.push(item(self)?);
            if !self.eat(",") {
                self.sym(close)?;
                break;
            }
        }
        Ok(out)
    }

    fn literal(&mut self) -> Result<Spanned<Literal>, DslError> {
        let t = self.peek().clone();
        let value = match t.tok {
            Tok::Int(n) => {
                self.pos += 1;
                Literal::Index(n)
            }
            Tok::Sym("(") => Literal::Coords(self.list("(", ")", Self::int)?),
            _ => return self.syntax(&t, format!("expected an element, found {}", Self::describe(&t))),
        };
        Ok(Spanned { value, line: t.line, col: t.col })
    }

    fn literals(&mut self) -> Result<Vec<Spanned<Literal>>, DslError> {
        self.list("[", "]", Self::literal)
    }

    fn ints(&mut self) -> Result<Vec<usize>, DslError> {
        self.list("[", "]", Self::int)
    }

    fn lookup(&self, name: &Spanned<String>, expected: &'static str) -> Result<&Item, DslError> {
        let b = self.ws.get(&name.value).ok_or_else(|| DslError::UnknownName {
            line: name.line,
            col: name.col,
            name: name.value.clone(),
        })?;
        if b.item.kind() != expected {
            return Err(DslError::WrongKind {
                line: name.line,
                col: name.col,
                name: name.value.clone(),
                found: b.item.kind(),
                expected,
            });
        }
        Ok(&b.item)
    }

    fn ring(&self, name: &Spanned<String>) -> Result<CommutativeRingTable, DslError> {
        match self.lookup(name, "ring")? {
            Item::Ring(r) => Ok(r.clone()),
            _ => unreachable!("kind checked by lookup"),
        }
    }

    fn lcr(&self, name: &Spanned<String>) -> Result<Arc<LcrTable>, DslError> {
        match self.lookup(name, "lcr")? {
            Item::Lcr(r) => Ok(r.clone()),
            _ => unreachable!("kind checked by lookup"),
        }
    }

    fn statement(&mut self) -> Result<(), DslError> {
        let kw = self.ident()?;
        let name = self.ident()?;
        let fail = |failure: Failure| DslError::Verification {
            line: kw.line,
            col: kw.col,
            name: name.value.clone(),
            failure,
        };
        let refused = |e: crate::LcrError| fail(Failure::Construction { message: e.to_string() });
        let item = match kw.value.as_str() {
            "ring" => {
                self.sym("=")?;
                Item::Ring(self.ring_expr().map_err(|e| e.either(refused))?)
            }
            "hom" => {
                let (dom, cod) = self.signature()?;
                let (a, b) = (self.ring(&dom)?, self.ring(&cod)?);
                let t = self.peek().clone();
                let hom = match self.ident()?.value.as_str() {
                    "reduce" => RingHom::reduce(&a, &b).map_err(refused)?,
                    "diagonal" => RingHom::diagonal(&a, &b).map_err(refused)?,
                    "zero" => RingHom::zero(&a, &b),
                    "identity" => RingHom::identity(&a),
                    "table" => RingHom { image: resolve_all(b.carrier(), &self.literals()?)? },
                    other => return self.syntax(&t, format!("unknown homomorphism form `{other}`")),
                };
                hom.verify(&a, &b).map_err(refused)?;
                Item::RingHom { domain: dom.value, codomain: cod.value, hom }
            }
            "lcr" => {
                self.sym("=")?;
                let rng = self.lcr_expr().map_err(|e| e.either(refused))?;
                if let Some(f) = axiom_failure(&rng) {
                    return Err(fail(f));
                }
                Item::Lcr(Arc::new(rng))
            }
            "ideal" => {
                self.keyword("of")?;
                let of = self.ident()?;
                let rng = self.lcr(&of)?;
                self.sym("=")?;
                let t = self.peek().clone();
                let ideal = match self.ident()?.value.as_str() {
                    "gens" => {
                        let gens = self.list("{", "}", Self::literal)?;
                        ideal_generated(&rng, &resolve_all(rng.carrier(), &gens)?).map_err(refused)?
                    }
                    "halo" => halo_ideal(&rng),
                    "zero" => zero_ideal(&rng),
                    "nilrad" => nilradical(&rng).map_err(refused)?,
                    other => return self.syntax(&t, format!("unknown ideal form `{other}`")),
                };
                Item::Ideal { of: of.value, ideal }
            }
            "lcrhom" => {
                let (dom, cod) = self.signature()?;
                let (r, s) = (self.lcr(&dom)?, self.lcr(&cod)?);
                let t = self.peek().clone();
                let image = match self.ident()?.value.as_str() {
                    "table" => resolve_all(s.carrier(), &self.literals()?)?,
                    "identity" if r == s => r.elements().collect(),
                    "identity" => return self.syntax(&t, "identity needs equal domain and codomain"),
                    other => return self.syntax(&t, format!("unknown homomorphism form `{other}`")),
                };
                let hom = RngHom::new(r, s, image).map_err(refused)?;
                if let Some(f) = hom_failure(&hom) {
                    return Err(fail(f));
                }
                Item::LcrHom { domain: dom.value, codomain: cod.value, hom }
            }
            other => {
                return Err(DslError::Syntax {
                    line: kw.line,
                    col: kw.col,
                    message: format!("expected a declaration (ring, hom, lcr, ideal, lcrhom), found `{other}`"),
                })
            }
        };
        self.eat(";");
        self.ws.push(Binding { name: name.value.clone(), line: kw.line, col: kw.col, item })
    }

    fn signature(&mut self) -> Result<(Spanned<String>, Spanned<String>), DslError> {
        self.sym(":")?;
        let dom = self.ident()?;
        self.sym("->")?;
        let cod = self.ident()?;
        self.sym("=")?;
        Ok((dom, cod))
    }

    fn ring_expr(&mut self) -> Result<CommutativeRingTable, Deferred> {
        let t = self.peek().clone();
        let head = self.ident()?;
        let factors = match head.value.as_str() {
            "Z" => vec![self.int()?],
            "product" => {
                let mut f = Vec::new();
                while matches!(&self.peek().tok, Tok::Ident(s) if s == "Z") {
                    self.pos += 1;
                    f.push(self.int()?);
                }
                if f.is_empty() {
                    let t = self.peek();
                    return Err(syntax_at(t.line, t.col, "expected `Z n` after `product`").into());
                }
                f
            }
            other => return Err(syntax_at(t.line, t.col, format!("unknown ring form `{other}`")).into()),
        };
        CommutativeRingTable::product(&factors).map_err(Deferred::Lcr)
    }

    fn lcr_expr(&mut self) -> Result<LcrTable, Deferred> {
        let t = self.peek().clone();
        let head = self.ident()?;
        match head.value.as_str() {
            "halo_ext" => {
                let (a, h, psi) = (self.ident()?, self.ident()?, self.ident()?);
                let (a, h) = (self.ring(&a)?, self.ring(&h)?);
                let hom = match self.lookup(&psi, "hom")? {
                    Item::RingHom { hom, .. } => hom.clone(),
                    _ => unreachable!("kind checked by lookup"),
                };
                halo_extension(&a, &h, &hom).map_err(Deferred::Lcr)
            }
            "ring" => {
                let a = self.ident()?;
                Ok(self.ring(&a)?.to_lcr())
            }
            "quotient" => {
                let r = self.ident()?;
                let r = self.lcr(&r)?;
                let i = self.ident()?;
                let (of, ideal) = match self.lookup(&i, "ideal")? {
                    Item::Ideal { of, ideal } => (of.clone(), ideal.clone()),
                    _ => unreachable!("kind checked by lookup"),
                };
                if self.ws.lcr(&of).map(|o| o.as_ref()) != Some(r.as_ref()) {
                    return Err(syntax_at(t.line, t.col, format!("`{}` is an ideal of `{of}`", i.value)).into());
                }
                quotient(&r, &ideal).map(|(q, _)| q).map_err(Deferred::Lcr)
            }
            "search" => {
                let factors = self.ints()?;
                let index = self.int()?;
                let carrier = FiniteCarrier::cyclic(&factors).map_err(Deferred::Lcr)?;
                let mut found = small_rng_search(&carrier, index + 1).map_err(Deferred::Lcr)?;
                if index >= found.len() {
                    return Err(Deferred::Lcr(crate::LcrError::Structural(format!(
                        "search on {factors:?} found {} structures, index {index} requested",
                        found.len()
                    ))));
                }
                Ok(found.swap_remove(index))
            }
            "tables" => self.tables(),
            other => Err(syntax_at(t.line, t.col, format!("unknown rng form `{other}`")).into()),
        }
    }

    fn tables(&mut self) -> Result<LcrTable, Deferred> {
        let open = self.peek().clone();
        self.sym("{")?;
        let (mut carrier, mut add, mut mul, mut localmul, mut localid) = (None, None, None, None, None);
        while !self.eat("}") {
            let field = self.ident()?;
            self.sym("=")?;
            match field.value.as_str() {
                "carrier" => carrier = Some(self.ints()?),
                "add" => add = Some(self.ints()?),
                "mul" => mul = Some(self.literals()?),
                "localmul" => localmul = Some(self.literals()?),
                "localid" => localid = Some(self.literal()?),
                other => {
                    return Err(syntax_at(field.line, field.col, format!("unknown table field `{other}`")).into())
                }
            }
            if !self.eat(",") {
                self.eat(";");
            }
        }
        let missing = |what: &str| -> Deferred {
            syntax_at(open.line, open.col, format!("tables block needs `{what}`")).into()
        };
        let carrier = match (carrier, add) {
            (Some(f), None) => FiniteCarrier::cyclic(&f).map_err(Deferred::Lcr)?,
            (None, Some(t)) => FiniteCarrier::from_add_table(isqrt(t.len()), t).map_err(Deferred::Lcr)?,
            (Some(_), Some(_)) => {
                return Err(syntax_at(open.line, open.col, "give either `carrier` or `add`, not both").into())
            }
            (None, None) => return Err(missing("carrier")),
        };
        let mul = resolve_all(&carrier, &mul.ok_or_else(|| missing("mul"))?)?;
        let localmul = resolve_all(&carrier, &localmul.ok_or_else(|| missing("localmul"))?)?;
        let localid = localid.map(|l| resolve(&carrier, &l)).transpose()?;
        LcrTable::assemble_table(carrier, mul, localmul, localid).map_err(Deferred::Lcr)
    }
}

/// A parse error, or a construction error to be attributed to the binding.
enum Deferred {
    Dsl(DslError),
    Lcr(crate::LcrError),
}

impl From<DslError> for Deferred {
    fn from(e: DslError) -> Self {
        Deferred::Dsl(e)
    }
}

impl Deferred {
    fn either(self, refused: impl FnOnce(crate::LcrError) -> DslError) -> DslError {
        match self {
            Deferred::Dsl(e) => e,
            Deferred::Lcr(e) => refused(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn builds_r8_from_parts() {
        let ws = parse("ring A = Z 4\nring H = Z 2\nhom psi : A -> H = reduce\nlcr R = halo_ext A H psi").unwrap();
        assert_eq!(ws.lcr("R").unwrap().as_ref(), &corpus::r8());
    }

    #[test]
    fn empty_input_is_empty_workspace() {
        assert!(parse("").unwrap().is_empty());
        assert!(parse("# only a comment\n\n").unwrap().is_empty());
    }

    #[test]
    fn forward_reference_is_unknown_name() {
        let err = parse("lcr R = halo_ext A H psi").unwrap_err();
        assert!(matches!(err, DslError::UnknownName { line: 1, ref name, .. } if name == "A"), "{err}");
    }

    #[test]
    fn tables_span_lines() {
        let text = "lcr R = tables {\n  carrier = [2, 2],\n  mul = [0,0,0,0, 0,0,0,0, 0,1,2,3, 0,1,2,3],\n  localmul = [0, 0, 0, 1],\n}\n";
        let ws = parse(text).unwrap();
        assert_eq!(ws.lcr("R").unwrap().as_ref(), &corpus::r4());
    }

    #[test]
    fn missing_local_identity_is_a_verification_failure() {
        let text = "lcr R = tables { carrier = [2, 2], mul = [0,0,0,0, 0,0,0,0, 0,1,2,3, 0,1,2,3], localmul = [0,0,0,0] }";
        match parse(text).unwrap_err() {
            DslError::Verification { failure: Failure::Axiom { law, replays, .. }, line: 1, .. } => {
                assert_eq!(law, "local_identity");
                assert!(replays);
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse("ring A = Z 4\nring B = Q 3").unwrap_err();
        assert_eq!(err.position(), (2, 10));
        let err = parse("ring A = Z 4 $").unwrap_err();
        assert_eq!(err.position(), (1, 14));
        let err = parse("ring A = Z 4\nring A = Z 2").unwrap_err();
        assert!(matches!(err, DslError::DuplicateName { line: 2, .. }));
    }

    #[test]
    fn ideals_quotients_and_homs() {
        let text = "ring A = Z 4\nring H = Z 2\nhom psi : A -> H = reduce\nlcr R = halo_ext A H psi\n\
                    ideal N of R = nilrad\nideal P of R = gens { (2,0) }\nideal K of R = halo\n\
                    lcr Q = quotient R K\nlcr Z = ring A\nlcrhom q : R -> Z = table [0,0,1,1,2,2,3,3]\n";
        let ws = parse(text).unwrap();
        assert_eq!(ws.ideal("N").unwrap().1.members(), &[0, 4]);
        assert_eq!(ws.ideal("P").unwrap().1.members(), &[0, 4]);
        assert_eq!(ws.lcr("Q").unwrap().order(), 4);
        assert!(ws.lcr_hom("q").is_some());
    }

    #[test]
    fn bad_hom_is_a_verification_failure() {
        let text = "lcr R = ring A";
        assert!(matches!(parse(text).unwrap_err(), DslError::UnknownName { .. }));
        let text = "ring A = Z 2\nlcr R = ring A\nlcrhom f : R -> R = table [1, 1]";
        match parse(text).unwrap_err() {
            DslError::Verification { failure: Failure::Hom { law, .. }, line: 3, .. } => assert_eq!(law, "additive"),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn json_round_trip() {
        let text = "ring A = Z 4\nring H = Z 2\nhom psi : A -> H = reduce\nlcr R = halo_ext A H psi\n\
                    ideal N of R = nilrad\nlcr S = search [2, 2] 0\nlcrhom f : R -> R = identity\n";
        let ws = parse(text).unwrap();
        let json = ws.to_json();
        let back = Workspace::from_json(&json).unwrap();
        assert_eq!(back, ws);
        assert_eq!(back.to_json(), json);
    }
}
