//! Line-oriented text formats. Writers emit canonical text, so parsing what
//! was written gives back equal values and re-writing gives identical bytes.

use std::fmt::Write as _;

use num_complex::Complex;
use scw_core::bundle::{BundleData, TransitionMap};
use scw_core::connection::Connection;
use scw_core::form::PolyForm;
use scw_core::lie::LieAlgebra;
use scw_core::poly::Poly;
use scw_core::scalar::{GaussQ, Q, TauPoly, C64};
use scw_core::simplicial::{Simplex, SimplexId, SimplicialSet};
use scw_core::Scalar;

#[derive(Debug, thiserror::Error, PartialEq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, msg: msg.into() })
}

// ---- scalars and polynomials ----

fn parse_q(s: &str) -> Option<Q> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: num_bigint::BigInt = d.parse().ok()?;
            if d == 0.into() {
                return None;
            }
            Some(Q::new(n.parse().ok()?, d))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

fn parse_gauss(s: &str) -> Option<GaussQ> {
    let Some(body) = s.strip_suffix('i') else {
        return Some(Complex::new(parse_q(s)?, Q::from_integer(0.into())));
    };
    let split = body.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').last()?.0;
    let re = parse_q(&body[..split])?;
    let im_text = &body[split..];
    let im = parse_q(im_text.strip_prefix('+').unwrap_or(im_text))?;
    Some(Complex::new(re, im))
}

/// Inverse of `Scalar`'s `Display`.
pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let s = s.trim();
    if let Some(body) = s.strip_prefix("<f:").and_then(|b| b.strip_suffix('>')) {
        let (re, im) = body.split_once(',')?;
        return Some(Scalar::complex(C64::new(re.parse().ok()?, im.parse().ok()?)));
    }
    let body = s.strip_prefix('[')?.strip_suffix(']')?;
    let mut terms = Vec::new();
    for part in body.split(';') {
        let (c, p) = part.rsplit_once('@')?;
        terms.push((p.parse::<i32>().ok()?, parse_gauss(c)?));
    }
    Some(Scalar::Exact(TauPoly::from_terms(terms)))
}

/// `0`, or terms `<scalar>[*x1^2*x3]` joined by ` + ` in canonical order.
pub fn write_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (m, c)) in p.terms().enumerate() {
        if n > 0 {
            out.push_str(" + ");
        }
        write!(out, "{c}").unwrap();
        for (v, &e) in m.iter().enumerate() {
            match e {
                0 => {}
                1 => write!(out, "*x{}", v + 1).unwrap(),
                _ => write!(out, "*x{}^{e}", v + 1).unwrap(),
            }
        }
    }
    out
}

pub fn parse_poly(s: &str, nvars: usize) -> Option<Poly> {
    let s = s.trim();
    if s == "0" {
        return Some(Poly::zero(nvars));
    }
    let mut p = Poly::zero(nvars);
    for term in s.split(" + ") {
        let mut parts = term.split('*');
        let c = parse_scalar(parts.next()?)?;
        let mut m = vec![0u32; nvars];
        for v in parts {
            let v = v.strip_prefix('x')?;
            let (idx, e) = match v.split_once('^') {
                Some((i, e)) => (i.parse::<usize>().ok()?, e.parse::<u32>().ok()?),
                None => (v.parse::<usize>().ok()?, 1),
            };
            if idx == 0 || idx > nvars {
                return None;
            }
            m[idx - 1] += e;
        }
        p.add_term(m, c);
    }
    Some(p)
}

// ---- simplicial sets ----

pub fn write_simplicial_set(x: &SimplicialSet) -> String {
    let mut out = String::from("simplicial-set v1\n");
    write_simplicial_body(x, &mut out);
    out
}

fn write_simplicial_body(x: &SimplicialSet, out: &mut String) {
    for d in 0..=x.dim() {
        writeln!(out, "dim {d}: {}", x.count(d)).unwrap();
    }
    for d in 1..=x.dim() {
        for id in x.ids(d) {
            for i in 0..=d {
                writeln!(out, "face {id} {i} -> {}", x.face_of(id, i)).unwrap();
            }
        }
    }
}

fn parse_id(s: &str) -> Option<SimplexId> {
    let (d, i) = s.split_once('.')?;
    Some(SimplexId::new(d.parse().ok()?, i.parse().ok()?))
}

fn parse_face_target(s: &str) -> Option<Simplex> {
    let s = s.trim();
    let (id, word) = match s.split_once(' ') {
        Some((id, w)) => (id, w.trim()),
        None => (s, ""),
    };
    let id = parse_id(id)?;
    let word: Vec<usize> = if word.is_empty() {
        Vec::new()
    } else {
        let w = word.strip_prefix('[')?.strip_suffix(']')?;
        w.split_whitespace()
            .map(|t| t.strip_prefix('s').and_then(|n| n.parse().ok()))
            .collect::<Option<_>>()?
    };
    Simplex::from_word(id, &word).ok()
}

/// Collects `dim` and `face` records, ignoring other lines.
struct SimplicialBuilder {
    counts: Vec<usize>,
    faces: Vec<Vec<Vec<Option<Simplex>>>>,
}

impl SimplicialBuilder {
    fn new() -> Self {
        SimplicialBuilder {
            counts: Vec::new(),
            faces: Vec::new(),
        }
    }

    /// Returns `Ok(true)` if the line was consumed.
    fn feed(&mut self, n: usize, line: &str) -> Result<bool, ParseError> {
        if let Some(rest) = line.strip_prefix("dim ") {
            let Some((d, c)) = rest.split_once(':') else {
                return err(n, "expected `dim <d>: <count>`");
            };
            let (Ok(d), Ok(c)) = (d.trim().parse::<usize>(), c.trim().parse::<usize>()) else {
                return err(n, "bad dimension record");
            };
            if d != self.counts.len() {
                return err(n, format!("dimension {d} out of order"));
            }
            self.counts.push(c);
            self.faces.push(vec![vec![None; d + 1]; if d == 0 { 0 } else { c }]);
            return Ok(true);
        }
        if let Some(rest) = line.strip_prefix("face ") {
            let Some((lhs, target)) = rest.split_once("->") else {
                return err(n, "expected `face <d>.<i> <j> -> <target>`");
            };
            let mut it = lhs.split_whitespace();
            let (Some(id), Some(j)) = (it.next().and_then(parse_id), it.next().and_then(|j| j.parse::<usize>().ok())) else {
                return err(n, "bad face source");
            };
            let Some(t) = parse_face_target(target) else {
                return err(n, "bad face target");
            };
            if id.dim == 0 || id.dim >= self.counts.len() || id.index >= self.counts[id.dim] || j > id.dim {
                return err(n, format!("face record for unknown simplex {id}"));
            }
            self.faces[id.dim][id.index][j] = Some(t);
            return Ok(true);
        }
        Ok(false)
    }

    fn finish(self, n: usize) -> Result<SimplicialSet, ParseError> {
        if self.counts.is_empty() {
            return err(n, "no dimensions declared");
        }
        let faces: Vec<Vec<Vec<Simplex>>> = self
            .faces
            .into_iter()
            .enumerate()
            .map(|(d, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(i, fs)| {
                        fs.into_iter()
                            .enumerate()
                            .map(|(j, f)| f.ok_or_else(|| ParseError { line: n, msg: format!("missing face {d}.{i} {j}") }))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        SimplicialSet::new(self.counts, faces).map_err(|e| ParseError { line: n, msg: e.to_string() })
    }
}

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn expect_header<'a>(it: &mut impl Iterator<Item = (usize, &'a str)>, header: &str) -> Result<(), ParseError> {
    match it.next() {
        Some((_, l)) if l == header => Ok(()),
        Some((n, l)) => err(n, format!("expected `{header}`, found `{l}`")),
        None => err(1, format!("expected `{header}`")),
    }
}

pub fn parse_simplicial_set(text: &str) -> Result<SimplicialSet, ParseError> {
    let mut it = lines(text);
    expect_header(&mut it, "simplicial-set v1")?;
    let mut b = SimplicialBuilder::new();
    let mut last = 1;
    for (n, l) in it {
        last = n;
        if !b.feed(n, l)? {
            return err(n, format!("unexpected line `{l}`"));
        }
    }
    b.finish(last)
}

// ---- forms ----

fn write_index(idx: &[u8]) -> String {
    idx.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn parse_index(s: &str, dim: usize) -> Option<Vec<u8>> {
    let s = s.trim();
    if s.is_empty() {
        return Some(Vec::new());
    }
    s.split(',')
        .map(|t| {
            let i: usize = t.trim().parse().ok()?;
            (1..=dim).contains(&i).then(|| (i - 1) as u8)
        })
        .collect()
}

/// `form v1`, `dim d`, `deg k`, then `comp i1,…,ik: <poly>` per nonzero
/// component (indices 1-based, matching `x1…xd`).
pub fn write_form(w: &PolyForm) -> String {
    let mut out = format!("form v1\ndim {}\ndeg {}\n", w.dim(), w.deg());
    for (idx, p) in w.comps() {
        writeln!(out, "comp {}: {}", write_index(idx), write_poly(p)).unwrap();
    }
    out
}

pub fn parse_form(text: &str) -> Result<PolyForm, ParseError> {
    let mut it = lines(text);
    expect_header(&mut it, "form v1")?;
    let (dim, deg) = match (it.next(), it.next()) {
        (Some((n1, a)), Some((n2, b))) => {
            let dim = a.strip_prefix("dim ").and_then(|v| v.trim().parse::<usize>().ok());
            let deg = b.strip_prefix("deg ").and_then(|v| v.trim().parse::<usize>().ok());
            match (dim, deg) {
                (Some(d), Some(k)) if k <= d => (d, k),
                (None, _) => return err(n1, "expected `dim <d>`"),
                _ => return err(n2, "expected `deg <k>` with k ≤ d"),
            }
        }
        _ => return err(1, "truncated form header"),
    };
    let mut w = PolyForm::zero(dim, deg);
    for (n, l) in it {
        let Some((idx, poly)) = l.strip_prefix("comp ").and_then(|r| r.split_once(':')) else {
            return err(n, "expected `comp <indices>: <poly>`");
        };
        let Some(idx) = parse_index(idx, dim).filter(|i| i.len() == deg) else {
            return err(n, "bad component index");
        };
        let Some(p) = parse_poly(poly, dim) else {
            return err(n, "bad polynomial");
        };
        w.add_comp(idx, p);
    }
    Ok(w)
}

// ---- bundles and connections ----

fn write_factor(f: &[Poly]) -> String {
    format!("exp({})", f.iter().map(write_poly).collect::<Vec<_>>().join(" | "))
}

fn write_transition(t: &TransitionMap) -> String {
    if t.factors().is_empty() {
        return "1".into();
    }
    t.factors().iter().map(|f| write_factor(f)).collect::<Vec<_>>().join(" * ")
}

fn parse_transition(s: &str, dim: usize, alg_dim: usize) -> Option<TransitionMap> {
    let s = s.trim();
    if s == "1" {
        return Some(TransitionMap::identity(dim));
    }
    let mut factors = Vec::new();
    for f in s.split(" * ") {
        let body = f.trim().strip_prefix("exp(")?.strip_suffix(')')?;
        let coords: Vec<Poly> = body.split(" | ").map(|p| parse_poly(p, dim)).collect::<Option<_>>()?;
        if coords.len() != alg_dim {
            return None;
        }
        factors.push(coords);
    }
    Some(TransitionMap::from_factors(dim, factors))
}

/// `bundle v1`, `group <name>`, the base as `dim`/`face` records, then
/// `transition <d>.<idx>.<i>: 1 | exp(<p_1> | … | <p_n>) [* exp(…)]` for every face.
pub fn write_bundle(p: &BundleData) -> String {
    let mut out = format!("bundle v1\ngroup {}\n", p.algebra().name());
    write_simplicial_body(p.base(), &mut out);
    for d in 1..=p.base().dim() {
        for id in p.base().ids(d) {
            for i in 0..=d {
                writeln!(out, "transition {id}.{i}: {}", write_transition(p.transition(id, i))).unwrap();
            }
        }
    }
    out
}

fn parse_group(it: &mut dyn Iterator<Item = (usize, &str)>) -> Result<LieAlgebra, ParseError> {
    match it.next() {
        Some((n, l)) => {
            let Some(name) = l.strip_prefix("group ") else {
                return err(n, "expected `group <name>`");
            };
            LieAlgebra::by_name(name.trim()).or_else(|e| err(n, e.to_string()))
        }
        None => err(1, "missing group line"),
    }
}

pub fn parse_bundle(text: &str) -> Result<BundleData, ParseError> {
    let mut it = lines(text);
    expect_header(&mut it, "bundle v1")?;
    let alg = parse_group(&mut it)?;
    let mut b = SimplicialBuilder::new();
    let mut records = Vec::new();
    let mut last = 1;
    for (n, l) in it {
        last = n;
        if b.feed(n, l)? {
            continue;
        }
        let Some((lhs, rhs)) = l.strip_prefix("transition ").and_then(|r| r.split_once(':')) else {
            return err(n, format!("unexpected line `{l}`"));
        };
        let parts: Vec<&str> = lhs.trim().split('.').collect();
        let nums: Option<Vec<usize>> = parts.iter().map(|t| t.parse().ok()).collect();
        match nums.as_deref() {
            Some(&[d, idx, i]) => records.push((n, d, idx, i, rhs.to_string())),
            _ => return err(n, "expected `transition <d>.<idx>.<i>`"),
        }
    }
    let base = b.finish(last)?;
    let mut p = BundleData::trivial(&base, &alg);
    for (n, d, idx, i, rhs) in records {
        if d == 0 || d > base.dim() || idx >= base.count(d) || i > d {
            return err(n, "transition for an unknown face");
        }
        let Some(t) = parse_transition(&rhs, d - 1, alg.dim()) else {
            return err(n, "bad transition");
        };
        p.set_transition(SimplexId::new(d, idx), i, t);
    }
    Ok(p)
}

/// `connection v1`, `group <name>`, then `A <d>.<idx> e<a> dx<i>: <poly>` for
/// every nonzero component (basis element `a` and direction `i` 1-based).
pub fn write_connection(a: &Connection) -> String {
    let mut out = format!("connection v1\ngroup {}\n", a.algebra().name());
    for d in 0..=a.base().dim() {
        for id in a.base().ids(d) {
            for (c, w) in a.get(id).iter().enumerate() {
                for (idx, p) in w.comps() {
                    writeln!(out, "A {id} e{} dx{}: {}", c + 1, idx[0] + 1, write_poly(p)).unwrap();
                }
            }
        }
    }
    out
}

/// Parses a connection over a known base.
pub fn parse_connection(text: &str, base: &SimplicialSet) -> Result<Connection, ParseError> {
    let mut it = lines(text);
    expect_header(&mut it, "connection v1")?;
    let alg = parse_group(&mut it)?;
    let mut a = Connection::zero(base, &alg);
    for (n, l) in it {
        let Some((lhs, poly)) = l.strip_prefix("A ").and_then(|r| r.split_once(':')) else {
            return err(n, "expected `A <simplex> e<a> dx<i>: <poly>`");
        };
        let f: Vec<&str> = lhs.split_whitespace().collect();
        let [id, e, dx] = f.as_slice() else {
            return err(n, "expected `A <simplex> e<a> dx<i>`");
        };
        let id = parse_id(id).filter(|id| id.dim <= base.dim() && id.index < base.count(id.dim));
        let e = e.strip_prefix('e').and_then(|v| v.parse::<usize>().ok()).filter(|&v| v >= 1 && v <= alg.dim());
        let (Some(id), Some(e)) = (id, e) else {
            return err(n, "unknown simplex or basis element");
        };
        let dx = dx.strip_prefix("dx").and_then(|v| v.parse::<usize>().ok()).filter(|&v| v >= 1 && v <= id.dim);
        let Some(dx) = dx else {
            return err(n, "bad direction");
        };
        let Some(p) = parse_poly(poly, id.dim) else {
            return err(n, "bad polynomial");
        };
        let mut coords = a.get(id).to_vec();
        coords[e - 1].add_comp(vec![(dx - 1) as u8], p);
        a.set(id, coords);
    }
    Ok(a)
}
