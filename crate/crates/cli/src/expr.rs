//! Object and morphism expressions.
//!
//! ```text
//! object   := term ("+" term)*
//! term     := "M[" int "," int "]" shift? | "C[" int "]" shift?
//!           | "S" shift? | ("OmegaS" | "M0" | "Minf") "(" int ")" shift?
//! shift    := "(" int ")"
//! morphism := ("-" | int "*")? ("f" | "g") "[" int "," int "," int "]" shift?
//!           | "0:C[" int "](" int ")->C[" int "](" int ")"
//! ```

use std::fmt;
use std::str::FromStr;

use dgstab::kronecker::{KroneckerKind, KroneckerObject};
use dgstab::star::{CanonicalObject, DgMorphism, MorphismKind, StarModuleSymbol, StarParams};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {input:?} at byte {at}: {reason}")]
pub struct ParseError {
    pub input: String,
    pub at: usize,
    pub reason: String,
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let t = self.rest().trim_start();
        self.pos = self.src.len() - t.len();
    }

    fn fail<T>(&self, reason: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            input: self.src.to_string(),
            at: self.pos,
            reason: reason.into(),
        })
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            self.fail(format!("expected {token:?}"))
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let r = self.rest();
        let sign = usize::from(r.starts_with('-') || r.starts_with('+'));
        let digits = r[sign..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return self.fail("expected an integer");
        }
        let v = r[..sign + digits].parse().or_else(|_| self.fail("integer out of range"))?;
        self.pos += sign + digits;
        Ok(v)
    }

    fn index(&mut self) -> Result<usize, ParseError> {
        let at = self.pos;
        let v = self.int()?;
        usize::try_from(v).or_else(|_| {
            self.pos = at;
            self.fail("expected a non-negative index")
        })
    }

    fn shift(&mut self) -> Result<i64, ParseError> {
        if self.eat("(") {
            let k = self.int()?;
            self.expect(")")?;
            Ok(k)
        } else {
            Ok(0)
        }
    }

    fn done(&mut self) -> Result<(), ParseError> {
        self.skip_ws();
        if self.rest().is_empty() {
            Ok(())
        } else {
            self.fail("unexpected trailing input")
        }
    }
}

/// One indecomposable summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Term {
    Star { i: usize, j: usize, k: i64 },
    Canonical { l: usize, k: i64 },
    Kronecker(KroneckerObject),
}

impl Term {
    pub fn is_kronecker(&self) -> bool {
        matches!(self, Term::Kronecker(_))
    }

    /// The canonical object a star term normalizes to.
    pub fn canonical(&self, p: StarParams) -> dgstab::Result<CanonicalObject> {
        match *self {
            Term::Star { i, j, k } => Ok(dgstab::star::normalize(p, StarModuleSymbol::new(p, i, j, k)?)),
            Term::Canonical { l, k } => CanonicalObject::new(p, l, k),
            Term::Kronecker(o) => Err(dgstab::Error::InvalidParameter(format!("{o} is a Kronecker module"))),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Star { i, j, k } => write!(f, "M[{i},{j}]({k})"),
            Term::Canonical { l, k } => write!(f, "C[{l}]({k})"),
            Term::Kronecker(o) => write!(f, "{o}"),
        }
    }
}

fn term(c: &mut Cursor) -> Result<Term, ParseError> {
    c.skip_ws();
    if c.eat("M[") {
        let i = c.index()?;
        c.expect(",")?;
        let j = c.index()?;
        c.expect("]")?;
        return Ok(Term::Star { i, j, k: c.shift()? });
    }
    if c.eat("C[") {
        let l = c.index()?;
        c.expect("]")?;
        return Ok(Term::Canonical { l, k: c.shift()? });
    }
    let kind = if c.eat("OmegaS(") {
        let m = c.int()?;
        c.expect(")")?;
        KroneckerKind::OmegaS(m)
    } else if c.eat("M0(") || c.eat("Minf(") {
        let inf = c.src[..c.pos].ends_with("Minf(");
        let at = c.pos;
        let m = c.index()?;
        if m == 0 {
            c.pos = at;
            return c.fail("Kronecker parameter must be positive");
        }
        c.expect(")")?;
        if inf {
            KroneckerKind::Minf(m)
        } else {
            KroneckerKind::M0(m)
        }
    } else if c.eat("S") {
        KroneckerKind::S
    } else {
        return c.fail("expected M[..], C[..], S, OmegaS, M0 or Minf");
    };
    Ok(Term::Kronecker(KroneckerObject::new(kind, c.shift()?)))
}

/// A direct sum of terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectExpr {
    pub terms: Vec<Term>,
}

impl ObjectExpr {
    pub fn is_kronecker(&self) -> bool {
        self.terms.iter().all(Term::is_kronecker)
    }

    pub fn is_star(&self) -> bool {
        !self.terms.iter().any(Term::is_kronecker)
    }
}

impl FromStr for ObjectExpr {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut c = Cursor::new(s);
        let mut terms = vec![term(&mut c)?];
        while c.eat("+") {
            terms.push(term(&mut c)?);
        }
        c.done()?;
        Ok(Self { terms })
    }
}

impl fmt::Display for ObjectExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, term) in self.terms.iter().enumerate() {
            if t > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{term}")?;
        }
        Ok(())
    }
}

/// Parse a morphism against the parameters it lives over; prints back via `DgMorphism`'s `Display`.
pub fn parse_morphism(p: StarParams, s: &str) -> Result<DgMorphism, ParseError> {
    let mut c = Cursor::new(s);
    if c.eat("0:C[") {
        let l = c.index()?;
        c.expect("](")?;
        let k = c.int()?;
        c.expect(")->C[")?;
        let r = c.index()?;
        c.expect("](")?;
        let k2 = c.int()?;
        c.expect(")")?;
        c.done()?;
        let x = CanonicalObject::new(p, l, k).or_else(|e| c.fail(e.to_string()))?;
        let y = CanonicalObject::new(p, r, k2).or_else(|e| c.fail(e.to_string()))?;
        return Ok(DgMorphism::zero(x, y));
    }
    let save = c.pos;
    let scalar = match c.int() {
        Ok(v) if c.eat("*") => v,
        _ => {
            c.pos = save;
            if c.eat("-") {
                -1
            } else {
                1
            }
        }
    };
    let kind = if c.eat("f[") {
        MorphismKind::F
    } else if c.eat("g[") {
        MorphismKind::G
    } else {
        return c.fail("expected f[..] or g[..]");
    };
    let l = c.index()?;
    c.expect(",")?;
    let r = c.index()?;
    c.expect(",")?;
    let j = c.index()?;
    c.expect("]")?;
    let k = c.shift()?;
    c.done()?;
    match DgMorphism::basis(p, kind, l, r, j, k) {
        Ok(m) => Ok(m.scaled(scalar)),
        Err(e) => c.fail(e.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn parse(s: &str) -> ObjectExpr {
        s.parse().unwrap()
    }

    #[test]
    fn star_and_canonical_terms() {
        assert_eq!(parse("M[1,2](0)").terms, vec![Term::Star { i: 1, j: 2, k: 0 }]);
        assert_eq!(parse(" M[ 3 , 1 ] ( -2 ) ").terms, vec![Term::Star { i: 3, j: 1, k: -2 }]);
        assert_eq!(parse("C[2]").terms, vec![Term::Canonical { l: 2, k: 0 }]);
        assert_eq!(parse("C[1](3) + C[2](5)").terms.len(), 2);
    }

    #[test]
    fn kronecker_terms() {
        let k = |kind, shift| Term::Kronecker(KroneckerObject::new(kind, shift));
        assert_eq!(parse("S").terms, vec![k(KroneckerKind::S, 0)]);
        assert_eq!(parse("S(2)").terms, vec![k(KroneckerKind::S, 2)]);
        assert_eq!(parse("OmegaS(-2)(1)").terms, vec![k(KroneckerKind::OmegaS(-2), 1)]);
        assert_eq!(
            parse("Minf(1)+Minf(1)(1)").terms,
            vec![k(KroneckerKind::Minf(1), 0), k(KroneckerKind::Minf(1), 1)]
        );
        assert_eq!(parse("M0(3)").terms, vec![k(KroneckerKind::M0(3), 0)]);
        assert!(parse("M0(1)").is_kronecker());
    }

    #[test]
    fn errors() {
        for bad in ["", "M[1,2", "C[x]", "M0(0)", "Minf(-1)", "S(1) junk", "T", "M[-1,2]", "C[1]+"] {
            assert!(bad.parse::<ObjectExpr>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn morphisms() {
        let p = StarParams::new(3, 2).unwrap();
        let m = parse_morphism(p, "f[2,2,1]").unwrap();
        assert_eq!(m.to_string(), "f[2,2,1](0)");
        assert_eq!(m.codomain, CanonicalObject::new(p, 2, 4).unwrap());
        assert_eq!(parse_morphism(p, "-f[2,2,1](3)").unwrap().scalar, -1);
        assert_eq!(parse_morphism(p, "5*g[1,1,1]").unwrap().scalar, 5);
        assert_eq!(parse_morphism(p, "-3*f[1,1,1]").unwrap().scalar, -3);
        assert!(parse_morphism(p, "0:C[1](0)->C[1](2)").unwrap().is_zero());
        assert!(parse_morphism(p, "f[2,2,3]").is_err());
        assert!(parse_morphism(p, "h[1,1,1]").is_err());
        assert!(parse_morphism(p, "0:C[3](0)->C[1](0)").is_err());
    }

    fn term_strategy() -> impl Strategy<Value = Term> {
        prop_oneof![
            (1usize..9, 1usize..9, -40i64..40).prop_map(|(i, j, k)| Term::Star { i, j, k }),
            (1usize..5, -40i64..40).prop_map(|(l, k)| Term::Canonical { l, k }),
            (-20i64..20).prop_map(|k| Term::Kronecker(KroneckerObject::new(KroneckerKind::S, k))),
            (-5i64..5, -20i64..20).prop_map(|(m, k)| Term::Kronecker(KroneckerObject::new(KroneckerKind::OmegaS(m), k))),
            (1usize..5, -20i64..20).prop_map(|(m, k)| Term::Kronecker(KroneckerObject::new(KroneckerKind::M0(m), k))),
            (1usize..5, -20i64..20).prop_map(|(m, k)| Term::Kronecker(KroneckerObject::new(KroneckerKind::Minf(m), k))),
        ]
    }

    proptest! {
        #[test]
        fn objects_round_trip(terms in prop::collection::vec(term_strategy(), 1..4)) {
            let e = ObjectExpr { terms };
            prop_assert_eq!(e.to_string().parse::<ObjectExpr>().unwrap(), e);
        }

        #[test]
        fn morphisms_round_trip(n in 2usize..7, d in 0usize..4, a in 0usize..400, b in 0usize..400, c in -3i64..=3) {
            let p = StarParams::new(n, d).unwrap();
            let objs = CanonicalObject::all(p);
            let (x, y) = (objs[a % objs.len()], objs[b % objs.len()]);
            let m = dgstab::star::dgstab_hom(p, x, y).unwrap().scaled(c);
            let m = if m.is_zero() { DgMorphism::zero(x, y) } else { m };
            prop_assert_eq!(parse_morphism(p, &m.to_string()).unwrap(), m);
        }
    }
}
