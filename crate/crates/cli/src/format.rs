//! Text formats: `.hpoly`, `.vpoly`, `.ext` and `MATRIX`.
//!
//! Entries are canonical rationals (`3`, `-1/2`). `#` starts a comment; a
//! comment after a row is that row's label.

use std::fmt::Write as _;

use extform::kernel::rational::parse_rational;
use extform::{AffineMap, Extension, HPoly, RatMatrix, Rational, VPoly};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

type Parsed<T> = Result<T, ParseError>;

struct Line<'a> {
    number: usize,
    tokens: Vec<&'a str>,
    label: Option<String>,
}

/// Nonblank lines with comments split off; a whole-line comment yields
/// nothing.
fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(k, raw)| {
            let (body, comment) = match raw.split_once('#') {
                Some((b, c)) => (b, Some(c.trim())),
                None => (raw, None),
            };
            let tokens: Vec<&str> = body.split_whitespace().collect();
            if tokens.is_empty() {
                return None;
            }
            Some(Line {
                number: k + 1,
                tokens,
                label: comment.filter(|c| !c.is_empty()).map(str::to_string),
            })
        })
        .collect()
}

fn err<T>(line: usize, message: impl Into<String>) -> Parsed<T> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

struct Cursor<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    last: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        let lines = lines(text);
        let last = text.lines().count().max(1);
        Cursor { lines, pos: 0, last }
    }

    fn next(&mut self, what: &str) -> Parsed<&Line<'a>> {
        match self.lines.get(self.pos) {
            Some(l) => {
                self.pos += 1;
                Ok(l)
            }
            None => err(self.last, format!("unexpected end of input, expected {what}")),
        }
    }

    fn finish(&self) -> Parsed<()> {
        match self.lines.get(self.pos) {
            Some(l) => err(l.number, "trailing content"),
            None => Ok(()),
        }
    }
}

fn rational(line: usize, tok: &str) -> Parsed<Rational> {
    match parse_rational(tok) {
        Some(r) => Ok(r),
        None => err(line, format!("not a rational: {tok:?}")),
    }
}

fn count(line: usize, tok: &str) -> Parsed<usize> {
    tok.parse()
        .or_else(|_| err(line, format!("not a count: {tok:?}")))
}

fn header(l: &Line<'_>, keyword: &str, fields: usize) -> Parsed<Vec<usize>> {
    if l.tokens.first() != Some(&keyword) || l.tokens.len() != fields + 1 {
        return err(l.number, format!("expected header `{keyword}` with {fields} counts"));
    }
    l.tokens[1..].iter().map(|t| count(l.number, t)).collect()
}

fn row(l: &Line<'_>, n: usize) -> Parsed<Vec<Rational>> {
    if l.tokens.len() != n {
        return err(l.number, format!("expected {n} entries, found {}", l.tokens.len()));
    }
    l.tokens.iter().map(|t| rational(l.number, t)).collect()
}

fn constraint(l: &Line<'_>, dim: usize, op: &str) -> Parsed<(Vec<Rational>, Rational)> {
    if l.tokens.len() != dim + 2 || l.tokens[dim] != op {
        return err(l.number, format!("expected {dim} coefficients, `{op}` and a right-hand side"));
    }
    let coeffs = l.tokens[..dim]
        .iter()
        .map(|t| rational(l.number, t))
        .collect::<Parsed<_>>()?;
    Ok((coeffs, rational(l.number, l.tokens[dim + 1])?))
}

fn parse_hpoly_block(c: &mut Cursor<'_>) -> Parsed<HPoly> {
    let h = c.next("HPOLY header")?;
    let (line, counts) = (h.number, header(h, "HPOLY", 3)?);
    let (dim, m, k) = (counts[0], counts[1], counts[2]);
    let mut p = HPoly::new(dim);
    for _ in 0..m {
        let l = c.next("inequality row")?;
        let (a, b) = constraint(l, dim, "<=")?;
        p.push_ineq(a, b, l.label.clone());
    }
    for _ in 0..k {
        let l = c.next("equation row")?;
        let (a, b) = constraint(l, dim, "=")?;
        p.push_eq(a, b, l.label.clone());
    }
    p.validate().or_else(|e| err(line, e.to_string()))?;
    Ok(p)
}

pub fn parse_hpoly(text: &str) -> Parsed<HPoly> {
    let mut c = Cursor::new(text);
    let p = parse_hpoly_block(&mut c)?;
    c.finish()?;
    Ok(p)
}

pub fn parse_vpoly(text: &str) -> Parsed<VPoly> {
    let mut c = Cursor::new(text);
    let h = c.next("VPOLY header")?;
    let (line, counts) = (h.number, header(h, "VPOLY", 2)?);
    let (dim, n) = (counts[0], counts[1]);
    let mut points = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let l = c.next("point row")?;
        points.push(row(l, dim)?);
        labels.push(l.label.clone());
    }
    c.finish()?;
    VPoly::with_labels(dim, points, labels).or_else(|e| err(line, e.to_string()))
}

pub fn parse_ext(text: &str) -> Parsed<Extension> {
    let mut c = Cursor::new(text);
    let h = c.next("EXT header")?;
    let (line, counts) = (h.number, header(h, "EXT", 2)?);
    let name = h.label.clone().unwrap_or_default();
    let (d, n) = (counts[0], counts[1]);
    let q = parse_hpoly_block(&mut c)?;
    if q.dim != d {
        return err(line, format!("EXT declares dimension {d}, Q has {}", q.dim));
    }
    let p = c.next("PROJ")?;
    if p.tokens != ["PROJ"] {
        return err(p.number, "expected `PROJ`");
    }
    let mut rows = Vec::with_capacity(n);
    let mut offset = Vec::with_capacity(n);
    for _ in 0..n {
        let l = c.next("projection row")?;
        let mut r = row(l, d + 1)?;
        offset.push(r.pop().expect("d + 1 ≥ 1 entries"));
        rows.push(r);
    }
    c.finish()?;
    let map = AffineMap::new(RatMatrix::from_rows(d, rows), offset).or_else(|e| err(line, e.to_string()))?;
    Extension::new(name, q, map).or_else(|e| err(line, e.to_string()))
}

pub fn parse_matrix(text: &str) -> Parsed<RatMatrix> {
    let mut c = Cursor::new(text);
    let h = c.next("MATRIX header")?;
    let counts = header(h, "MATRIX", 2)?;
    let (m, n) = (counts[0], counts[1]);
    let rows = (0..m)
        .map(|_| c.next("matrix row").and_then(|l| row(l, n)))
        .collect::<Parsed<Vec<_>>>()?;
    c.finish()?;
    Ok(RatMatrix::from_rows(n, rows))
}

fn join(values: &[Rational]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn with_label(mut line: String, label: &Option<String>) -> String {
    if let Some(l) = label {
        line.push_str("  # ");
        line.push_str(l);
    }
    line.push('\n');
    line
}

fn lhs(coeffs: &[Rational]) -> String {
    let j = join(coeffs);
    if j.is_empty() {
        j
    } else {
        j + " "
    }
}

pub fn write_hpoly(p: &HPoly) -> String {
    let mut out = format!("HPOLY {} {} {}\n", p.dim, p.ineqs.len(), p.eqs.len());
    for r in &p.ineqs {
        out += &with_label(format!("{}<= {}", lhs(&r.coeffs), r.rhs), &r.label);
    }
    for r in &p.eqs {
        out += &with_label(format!("{}= {}", lhs(&r.coeffs), r.rhs), &r.label);
    }
    out
}

pub fn write_vpoly(v: &VPoly) -> String {
    let mut out = format!("VPOLY {} {}\n", v.dim, v.len());
    for (p, l) in v.points.iter().zip(&v.labels) {
        out += &with_label(join(p), l);
    }
    out
}

pub fn write_ext(e: &Extension) -> String {
    let name = (!e.name.is_empty()).then(|| e.name.clone());
    let mut out = with_label(format!("EXT {} {}", e.dim(), e.target_dim()), &name);
    out += &write_hpoly(&e.q);
    out += "PROJ\n";
    for i in 0..e.target_dim() {
        let mut r = e.proj.matrix.row(i).to_vec();
        r.push(e.proj.offset[i].clone());
        out += &join(&r);
        out.push('\n');
    }
    out
}

/// Matrix with its row and column names as leading comments.
pub fn write_matrix(m: &RatMatrix, row_labels: &[String], col_labels: &[String]) -> String {
    let mut out = String::new();
    if !col_labels.is_empty() {
        let _ = writeln!(out, "# columns: {}", col_labels.join(", "));
    }
    let _ = writeln!(out, "MATRIX {} {}", m.rows(), m.cols());
    for i in 0..m.rows() {
        out += &with_label(join(m.row(i)), &row_labels.get(i).cloned());
    }
    out
}

/// A polytope file of either kind, told apart by its header.
pub enum PolyFile {
    H(HPoly),
    V(VPoly),
}

pub fn parse_poly(text: &str) -> Parsed<PolyFile> {
    let first = lines(text).into_iter().next();
    match first.as_ref().and_then(|l| l.tokens.first().copied()) {
        Some("HPOLY") => parse_hpoly(text).map(PolyFile::H),
        Some("VPOLY") => parse_vpoly(text).map(PolyFile::V),
        _ => err(first.map_or(1, |l| l.number), "expected an HPOLY or VPOLY header"),
    }
}
