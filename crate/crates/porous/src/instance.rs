//! Instance files.
//!
//! One-dimensional systems use a line-oriented format:
//!
//! ```text
//! start: 1
//! target: 0          # or: target: 0 mod 3
//! functions:
//! x - 3
//! 2*x
//! ```
//!
//! Several functions may share a line when separated by `;` or `,`, and a
//! leading `f(x) =` is accepted. Matrix systems are JSON documents
//! (recognised by a leading `{`):
//!
//! ```text
//! {"x0": [1, 1], "matrices": [[[1, -3], [0, 1]], [[2, 0], [0, 1]]],
//!  "target": {"base": [0, 0], "periods": [[3, 0], [0, 1]]}}
//! ```
//!
//! where `target` may also be `{"point": [..]}` or omitted.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::affbasis::Lds;
use crate::affine1d::{AffineFn, AffineSystem, Target};
use crate::error::{Error, Result};
use crate::intlat::{check_dim, IntMat, IntVec, LatticeCoset};
use crate::semilinear::LinearSet1D;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LdsTarget {
    Point(IntVec),
    ZLinear(LatticeCoset),
}

impl LdsTarget {
    pub fn as_coset(&self) -> LatticeCoset {
        match self {
            LdsTarget::Point(p) => LatticeCoset::point(p.clone()),
            LdsTarget::ZLinear(c) => c.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LdsInstance {
    pub system: Lds,
    pub target: Option<LdsTarget>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Affine(AffineSystem),
    Lds(LdsInstance),
}

impl Instance {
    /// Matrix view of the instance. A 1-D system `x ↦ a·x + b` becomes the
    /// 2-D linear system on `(x, 1)`.
    pub fn to_lds(&self) -> LdsInstance {
        match self {
            Instance::Lds(l) => l.clone(),
            Instance::Affine(sys) => homogenize(sys),
        }
    }
}

fn homogenize(sys: &AffineSystem) -> LdsInstance {
    let one = BigInt::one();
    let x0 = IntVec(vec![sys.start.clone(), one.clone()]);
    let matrices = sys
        .fns
        .iter()
        .map(|f| {
            IntMat::new(vec![vec![f.a.clone(), f.b.clone()], vec![BigInt::zero(), one.clone()]])
                .expect("2x2")
        })
        .collect();
    let target = match &sys.target {
        Target::Point(y) => LdsTarget::Point(IntVec(vec![y.clone(), one.clone()])),
        Target::ZClass(c) => LdsTarget::ZLinear(
            LatticeCoset::from_generators(
                IntVec(vec![c.base().clone(), one.clone()]),
                &[
                    IntVec(vec![c.period().clone(), BigInt::zero()]),
                    IntVec(vec![BigInt::zero(), one]),
                ],
            )
            .expect("2-D"),
        ),
    };
    LdsInstance {
        system: Lds::new(x0, matrices).expect("nonempty 2x2 family"),
        target: Some(target),
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    if text.trim_start().starts_with('{') {
        parse_lds(text).map(Instance::Lds)
    } else {
        parse_affine(text).map(Instance::Affine)
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Parse the line-oriented 1-D format.
pub fn parse_affine(text: &str) -> Result<AffineSystem> {
    let mut start = None;
    let mut target = None;
    let mut fns: Option<Vec<AffineFn>> = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let body = content.trim_start();
        let keyed = body
            .find(':')
            .filter(|&k| is_keyword(body[..k].trim()))
            .map(|k| (body[..k].trim(), &body[k + 1..], indent + k + 2));
        match keyed {
            Some(("start", rest, col)) => {
                let mut p = Cursor::new(rest, line_no, col);
                start = Some(p.integer()?);
                p.end()?;
            }
            Some(("target", rest, col)) => {
                let mut p = Cursor::new(rest, line_no, col);
                let c = p.integer()?;
                target = Some(if p.eat_word("mod") {
                    let m = p.integer()?;
                    if m <= BigInt::zero() {
                        return Err(syntax(line_no, p.column(), "modulus must be positive"));
                    }
                    Target::ZClass(LinearSet1D::int(c, m))
                } else {
                    Target::Point(c)
                });
                p.end()?;
            }
            Some((_, rest, col)) => {
                parse_function_list(rest, line_no, col, fns.get_or_insert_with(Vec::new))?;
            }
            None => match fns.as_mut() {
                Some(list) => parse_function_list(body, line_no, indent + 1, list)?,
                None => {
                    return Err(syntax(
                        line_no,
                        indent + 1,
                        "expected `start:`, `target:` or `functions:`",
                    ))
                }
            },
        }
    }
    let end = last_line + 1;
    let start = start.ok_or_else(|| syntax(end, 1, "missing `start:`"))?;
    let target = target.ok_or_else(|| syntax(end, 1, "missing `target:`"))?;
    let fns = fns.ok_or_else(|| syntax(end, 1, "missing `functions:`"))?;
    if fns.is_empty() {
        return Err(Error::EmptyFunctions);
    }
    Ok(AffineSystem { start, fns, target })
}

fn is_keyword(k: &str) -> bool {
    matches!(k, "start" | "target" | "functions")
}

fn parse_function_list(text: &str, line: usize, column: usize, out: &mut Vec<AffineFn>) -> Result<()> {
    let mut offset = 0;
    for piece in text.split([';', ',']) {
        if !piece.trim().is_empty() {
            let mut p = Cursor::new(piece, line, column + offset);
            out.push(p.affine()?);
            p.end()?;
        }
        offset += piece.chars().count() + 1;
    }
    Ok(())
}

/// Character cursor with 1-based line/column tracking.
struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col0: usize,
}

impl Cursor {
    fn new(src: &str, line: usize, col0: usize) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            line,
            col0,
        }
    }

    fn column(&self) -> usize {
        self.col0 + self.pos
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        syntax(self.line, self.column(), msg)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        self.skip_ws();
        let n = w.chars().count();
        let here: String = self.chars.iter().skip(self.pos).take(n).collect();
        let boundary = !self
            .chars
            .get(self.pos + n)
            .is_some_and(|c| c.is_alphanumeric());
        if here == w && boundary {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn end(&mut self) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let from = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > from).then(|| {
            let s: String = self.chars[from..self.pos].iter().collect();
            s.parse().expect("ascii digits")
        })
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        self.skip_ws();
        let n = self.digits().ok_or_else(|| self.err("expected an integer"))?;
        Ok(if neg { -n } else { n })
    }

    /// `term (('+'|'-') term)*` with `term := int | int ['*'] 'x' | 'x'`.
    fn affine(&mut self) -> Result<AffineFn> {
        self.skip_ws();
        if self.eat_word("f") {
            if !(self.eat('(') && self.eat('x') && self.eat(')') && self.eat('=')) {
                return Err(self.err("expected `f(x) =`"));
            }
        }
        let mut a = BigInt::zero();
        let mut b = BigInt::zero();
        let mut first = true;
        loop {
            self.skip_ws();
            let sign = if self.eat('-') {
                -1
            } else if self.eat('+') || first {
                1
            } else {
                break;
            };
            self.skip_ws();
            let coeff = self.digits();
            self.skip_ws();
            let has_star = self.eat('*');
            self.skip_ws();
            let has_x = self.peek() == Some('x');
            if has_x {
                self.pos += 1;
                if self.peek().is_some_and(|c| c.is_alphanumeric() || c == '^') {
                    return Err(self.err("only linear terms `a*x` are supported"));
                }
                a += coeff.unwrap_or_else(BigInt::one) * sign;
            } else if has_star {
                return Err(self.err("expected `x` after `*`"));
            } else if let Some(c) = coeff {
                b += c * sign;
            } else {
                return Err(self.err("expected a term"));
            }
            first = false;
        }
        Ok(AffineFn { a, b })
    }
}

/// Render a 1-D system in the line format; `parse_affine` inverts it.
pub fn render_affine(sys: &AffineSystem) -> String {
    let target = match &sys.target {
        Target::Point(y) => y.to_string(),
        Target::ZClass(c) => format!("{} mod {}", c.base(), c.period()),
    };
    let mut out = format!("start: {}\ntarget: {}\nfunctions:\n", sys.start, target);
    for f in &sys.fns {
        out.push_str(expression(f).as_str());
        out.push('\n');
    }
    out
}

/// `x - 3`, `2x`, `-4x + 7`, `5`.
pub fn expression(f: &AffineFn) -> String {
    let s = f.to_string();
    s.strip_prefix("f(x) = ").unwrap_or(&s).to_string()
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LdsDoc {
    x0: Vec<i64>,
    matrices: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target: Option<TargetDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum TargetDoc {
    Point { point: Vec<i64> },
    ZLinear { base: Vec<i64>, periods: Vec<Vec<i64>> },
}

fn parse_lds(text: &str) -> Result<LdsInstance> {
    let doc: LdsDoc =
        serde_json::from_str(text).map_err(|e| syntax(e.line(), e.column(), e.to_string()))?;
    let x0 = IntVec::from_i64(&doc.x0);
    let dim = x0.dim();
    let matrices = doc
        .matrices
        .iter()
        .map(|m| {
            if m.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: m.len(),
                });
            }
            IntMat::new(
                m.iter()
                    .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let system = Lds::new(x0, matrices)?;
    let target = match doc.target {
        None => None,
        Some(TargetDoc::Point { point }) => {
            check_dim(dim, point.len())?;
            Some(LdsTarget::Point(IntVec::from_i64(&point)))
        }
        Some(TargetDoc::ZLinear { base, periods }) => {
            check_dim(dim, base.len())?;
            let ps: Vec<IntVec> = periods.iter().map(|p| IntVec::from_i64(p)).collect();
            Some(LdsTarget::ZLinear(LatticeCoset::from_generators(
                IntVec::from_i64(&base),
                &ps,
            )?))
        }
    };
    Ok(LdsInstance { system, target })
}
