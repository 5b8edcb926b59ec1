//! Diophantine polynomials: parsing, exact evaluation, and the bounded
//! brute-force solvability oracle.
//!
//! A polynomial D(x1, .., xk) with integer coefficients is held in canonical
//! form as a map from exponent vectors to nonzero coefficients. Evaluation
//! is exact (arbitrary precision); values of D^2 feed the diagonal problem
//! Hamiltonian, so silent overflow is not an option.
//!
//! Grammar accepted by [`Polynomial::parse`]:
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nonneg_int)?
//! base   := nonneg_int | ident | '(' expr ')'
//! ident  := letter (letter|digit)*
//! ```
//!
//! Whitespace is insignificant. Variables named `x1`, `x2`, .. are ordered
//! by their index; any other identifiers are ordered by first appearance.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Default cap on the number of distinct variables accepted by the parser.
pub const DEFAULT_MAX_VARS: usize = 8;

/// Default cap on the number of points an oracle search may enumerate.
pub const DEFAULT_ORACLE_BUDGET: u128 = 10_000_000;

/// Cap on minimizer tuples stored verbatim in an [`OracleVerdict`]; the
/// exact count is always reported.
pub const MAX_STORED_MINIMIZERS: usize = 1024;

/// Canonical multivariate integer polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Polynomial {
    /// Parse an expression with the default variable cap.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with_max_vars(text, DEFAULT_MAX_VARS)
    }

    pub fn parse_with_max_vars(text: &str, max_vars: usize) -> Result<Self> {
        Parser::new(text, max_vars).parse()
    }

    /// Build directly from terms; zero coefficients are dropped.
    pub fn from_terms(num_vars: usize, terms: Vec<(Vec<u32>, BigInt)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (exps, coeff) in terms {
            if exps.len() != num_vars {
                return Err(Error::ArityMismatch {
                    expected: num_vars,
                    found: exps.len(),
                });
            }
            let entry = map.entry(exps).or_insert_with(BigInt::zero);
            *entry += coeff;
        }
        map.retain(|_, c: &mut BigInt| !c.is_zero());
        Ok(Polynomial {
            num_vars,
            terms: map,
        })
    }

    pub fn zero() -> Self {
        Polynomial {
            num_vars: 0,
            terms: BTreeMap::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same polynomial viewed over `num_vars >= self.num_vars` variables.
    pub fn pad_vars(&self, num_vars: usize) -> Result<Self> {
        if num_vars < self.num_vars {
            return Err(Error::ArityMismatch {
                expected: self.num_vars,
                found: num_vars,
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e.resize(num_vars, 0);
                (e, c.clone())
            })
            .collect();
        Ok(Polynomial {
            num_vars,
            terms,
        })
    }

    /// Exact value of D at a point of nonnegative integers.
    pub fn evaluate(&self, point: &[u64]) -> Result<BigInt> {
        if point.len() != self.num_vars {
            return Err(Error::ArityMismatch {
                expected: self.num_vars,
                found: point.len(),
            });
        }
        let mut acc = BigInt::zero();
        for (exps, coeff) in &self.terms {
            let mut mono = BigInt::one();
            for (x, &e) in point.iter().zip(exps) {
                if e > 0 {
                    mono *= BigInt::from(*x).pow(e);
                }
            }
            acc += coeff * mono;
        }
        Ok(acc)
    }

    /// Exact D(point)^2 as an unsigned integer.
    pub fn evaluate_squared(&self, point: &[u64]) -> Result<BigUint> {
        let v = self.evaluate(point)?;
        Ok((&v * &v).magnitude().clone())
    }

    /// Exhaustive scan of {0..bound}^k for the minimum of D^2.
    pub fn oracle_search(&self, bound: u64) -> Result<OracleVerdict> {
        self.oracle_search_with_budget(bound, DEFAULT_ORACLE_BUDGET)
    }

    pub fn oracle_search_with_budget(&self, bound: u64, budget: u128) -> Result<OracleVerdict> {
        let k = self.num_vars;
        let side = bound as u128 + 1;
        let points = side.checked_pow(k as u32).ok_or(Error::BudgetExceeded {
            points: u128::MAX,
            budget,
        })?;
        if points > budget {
            return Err(Error::BudgetExceeded { points, budget });
        }

        let mut min_value: Option<BigUint> = None;
        let mut minimizers: Vec<Vec<u64>> = Vec::new();
        let mut minimizer_count: u64 = 0;
        let mut point = vec![0u64; k];
        // odometer with the last coordinate fastest: lexicographic scan order
        loop {
            let v = self.evaluate_squared(&point)?;
            let better = match &min_value {
                None => true,
                Some(m) => v < *m,
            };
            if better {
                min_value = Some(v);
                minimizers.clear();
                minimizers.push(point.clone());
                minimizer_count = 1;
            } else if min_value.as_ref() == Some(&v) {
                minimizer_count += 1;
                if minimizers.len() < MAX_STORED_MINIMIZERS {
                    minimizers.push(point.clone());
                }
            }
            if !advance(&mut point, bound) {
                break;
            }
        }

        let min_value = min_value.unwrap_or_else(BigUint::zero);
        let solvable = min_value.is_zero();
        Ok(OracleVerdict {
            solvable_in_box: solvable,
            witness: if solvable {
                Some(minimizers[0].clone())
            } else {
                None
            },
            min_value,
            minimizers,
            minimizer_count,
            box_bound: bound,
        })
    }
}

impl fmt::Display for Polynomial {
    /// Canonical form: terms in ascending exponent order, `x<i>` naming.
    /// Re-parsing the output reproduces the term map (the arity of trailing
    /// unused variables is not encoded).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (exps, coeff)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        format!("x{}", v + 1)
                    } else {
                        format!("x{}^{}", v + 1, e)
                    }
                })
                .collect();
            let mag = coeff.abs();
            let lead = if i == 0 {
                if coeff.is_negative() {
                    "-".to_string()
                } else {
                    String::new()
                }
            } else if coeff.is_negative() {
                " - ".to_string()
            } else {
                " + ".to_string()
            };
            write!(f, "{lead}")?;
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Outcome of a bounded exhaustive search over {0..bound}^k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    /// True iff some point of the box is a root of D.
    pub solvable_in_box: bool,
    /// A root, present iff `solvable_in_box`; the lexicographically first.
    pub witness: Option<Vec<u64>>,
    /// Minimum of D^2 over the box.
    pub min_value: BigUint,
    /// Points attaining the minimum, lexicographic, capped at
    /// [`MAX_STORED_MINIMIZERS`].
    pub minimizers: Vec<Vec<u64>>,
    /// Exact number of minimizers (may exceed `minimizers.len()`).
    pub minimizer_count: u64,
    pub box_bound: u64,
}

// ---------------------------------------------------------------------------
// parser
// ---------------------------------------------------------------------------

/// Polynomial over named variables, used only while parsing.
type NamedTerms = BTreeMap<BTreeMap<usize, u32>, BigInt>;

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
    max_vars: usize,
    var_ids: BTreeMap<String, usize>,
    var_order: Vec<String>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, max_vars: usize) -> Self {
        Parser {
            text: text.as_bytes(),
            pos: 0,
            max_vars,
            var_ids: BTreeMap::new(),
            var_order: Vec::new(),
        }
    }

    fn parse(mut self) -> Result<Polynomial> {
        let terms = self.expr()?;
        self.skip_ws();
        if self.pos != self.text.len() {
            return Err(self.err("unexpected trailing input"));
        }
        self.canonicalize(terms)
    }

    fn err(&self, message: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<NamedTerms> {
        let mut acc = if self.peek() == Some(b'-') {
            self.pos += 1;
            negate(self.term()?)
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = add(acc, self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = add(acc, negate(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<NamedTerms> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = mul(&acc, &self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<NamedTerms> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.err("exponent too large"))?;
            return Ok(pow(&base, e));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<NamedTerms> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.text[start..self.pos]).unwrap();
                let coeff: BigInt = digits.parse().expect("digit run parses as integer");
                Ok(constant(coeff))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.text.len()
                    && (self.text[self.pos].is_ascii_alphanumeric())
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.text[start..self.pos])
                    .unwrap()
                    .to_string();
                let id = match self.var_ids.get(&name) {
                    Some(&id) => id,
                    None => {
                        let id = self.var_order.len();
                        if id >= self.max_vars {
                            return Err(Error::TooManyVariables {
                                found: id + 1,
                                max: self.max_vars,
                            });
                        }
                        self.var_ids.insert(name.clone(), id);
                        self.var_order.push(name);
                        id
                    }
                };
                Ok(variable(id))
            }
            Some(_) => Err(self.err("expected a number, variable, or '('")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a nonnegative integer"));
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer literal too large"))
    }

    /// Map parse-order variable ids to final indices: x-numbered names give
    /// the index directly, anything else keeps first-appearance order.
    fn canonicalize(&self, named: NamedTerms) -> Result<Polynomial> {
        let all_x_numbered = !self.var_order.is_empty()
            && self.var_order.iter().all(|n| x_index(n).is_some());
        let (num_vars, remap): (usize, Vec<usize>) = if all_x_numbered {
            let idx: Vec<usize> = self
                .var_order
                .iter()
                .map(|n| x_index(n).unwrap() - 1)
                .collect();
            let k = idx.iter().max().map_or(0, |m| m + 1);
            (k, idx)
        } else {
            (self.var_order.len(), (0..self.var_order.len()).collect())
        };
        if num_vars > self.max_vars {
            return Err(Error::TooManyVariables {
                found: num_vars,
                max: self.max_vars,
            });
        }
        let mut terms = Vec::new();
        for (exp_map, coeff) in named {
            let mut exps = vec![0u32; num_vars];
            for (id, e) in exp_map {
                exps[remap[id]] += e;
            }
            terms.push((exps, coeff));
        }
        Polynomial::from_terms(num_vars, terms)
    }
}

/// Step the point to its lexicographic successor in {0..bound}^k; false when
/// the box is exhausted.
fn advance(point: &mut [u64], bound: u64) -> bool {
    for i in (0..point.len()).rev() {
        if point[i] < bound {
            point[i] += 1;
            return true;
        }
        point[i] = 0;
    }
    false
}

fn x_index(name: &str) -> Option<usize> {
    let rest = name.strip_prefix('x')?;
    if rest.is_empty() || rest.starts_with('0') {
        return None;
    }
    rest.parse().ok()
}

fn constant(c: BigInt) -> NamedTerms {
    let mut t = NamedTerms::new();
    if !c.is_zero() {
        t.insert(BTreeMap::new(), c);
    }
    t
}

fn variable(id: usize) -> NamedTerms {
    let mut t = NamedTerms::new();
    let mut e = BTreeMap::new();
    e.insert(id, 1);
    t.insert(e, BigInt::one());
    t
}

fn add(mut a: NamedTerms, b: NamedTerms) -> NamedTerms {
    for (e, c) in b {
        let entry = a.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
    }
    a.retain(|_, c| !c.is_zero());
    a
}

fn negate(a: NamedTerms) -> NamedTerms {
    a.into_iter().map(|(e, c)| (e, -c)).collect()
}

fn mul(a: &NamedTerms, b: &NamedTerms) -> NamedTerms {
    let mut out = NamedTerms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let mut e = ea.clone();
            for (&id, &exp) in eb {
                *e.entry(id).or_insert(0) += exp;
            }
            let entry = out.entry(e).or_insert_with(BigInt::zero);
            *entry += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn pow(a: &NamedTerms, e: u32) -> NamedTerms {
    let mut out = constant(BigInt::one());
    for _ in 0..e {
        out = mul(&out, a);
    }
    out
}
