//! Plain-text formats for matrices, 2-groups, complexes, resolutions and extensions.
//!
//! Writers produce `\n`-terminated lines without trailing whitespace. Parsers check shapes and
//! well-definedness of every homomorphism; chain conditions and coherence are left to the
//! certificate checks so that a malformed complex can still be loaded and diagnosed.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::complexes::TwoChainComplex;
use crate::error::{Error, Result};
use crate::pic2::{OneMor, Pic2, TwoMor};
use crate::resolve::Resolution;
use crate::zlin::{AbHom, FgAbPresentation, IntMatrix};

pub fn write_matrix(m: &IntMatrix) -> String {
    let mut s = format!("{} {}\n", m.rows(), m.cols());
    write_block(&mut s, m);
    s
}

fn write_block(s: &mut String, m: &IntMatrix) {
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(BigInt::to_string).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
}

fn write_group(s: &mut String, label: &str, g: &FgAbPresentation) {
    let _ = writeln!(s, "{label} gens={} rels={}", g.gens(), g.relations().rows());
    write_block(s, g.relations());
}

pub fn write_pic2(p: &Pic2) -> String {
    let mut s = String::new();
    push_pic2(&mut s, p);
    s
}

fn push_pic2(s: &mut String, p: &Pic2) {
    s.push_str("pic2\n");
    write_group(s, "group1", p.c1());
    write_group(s, "group0", p.c0());
    s.push_str("diff\n");
    write_block(s, p.d().matrix());
}

fn push_one(s: &mut String, label: &str, f: &OneMor) {
    s.push_str(label);
    s.push('\n');
    write_block(s, f.f1().matrix());
    write_block(s, f.f0().matrix());
}

fn push_two(s: &mut String, label: &str, t: &TwoMor) {
    s.push_str(label);
    s.push('\n');
    write_block(s, t.h().matrix());
}

pub fn write_complex(c: &TwoChainComplex) -> String {
    let mut s = String::new();
    push_complex(&mut s, c);
    s
}

fn push_complex(s: &mut String, c: &TwoChainComplex) {
    let _ = writeln!(s, "complex n={}", c.len());
    for (i, o) in c.objects().iter().enumerate() {
        let _ = writeln!(s, "object {i}");
        push_pic2(s, o);
    }
    for (i, f) in c.maps().iter().enumerate() {
        push_one(s, &format!("map {}", i + 1), f);
    }
    for (i, t) in c.nulls().iter().enumerate() {
        push_two(s, &format!("null {}", i + 2), t);
    }
}

/// Canonical serialization of a resolution: the target, the complex `P_0 <- ... <- P_N`, the
/// augmentation and the cell `augmentation ∘ L_1 => 0`.
pub fn write_resolution(r: &Resolution) -> String {
    write_resolution_parts(r.target(), &r.complex(), &r.augmentation(), &r.aug_null())
}

fn write_resolution_parts(target: &Pic2, complex: &TwoChainComplex, aug: &OneMor, aug_null: &TwoMor) -> String {
    let mut s = String::from("resolution\ntarget\n");
    push_pic2(&mut s, target);
    push_complex(&mut s, complex);
    push_one(&mut s, "augmentation", aug);
    push_two(&mut s, "augmentation_null", aug_null);
    s
}

/// `A -F-> B -G-> C` with `φ: G∘F => 0`, before any extension check.
#[derive(Clone, Debug)]
pub struct ExtensionData {
    pub f: OneMor,
    pub g: OneMor,
    pub phi: TwoMor,
}

pub fn write_extension(f: &OneMor, g: &OneMor, phi: &TwoMor) -> String {
    let mut s = String::from("extension\n");
    for (label, p) in [("A", f.source()), ("B", f.target()), ("C", g.target())] {
        let _ = writeln!(s, "object {label}");
        push_pic2(&mut s, p);
    }
    push_one(&mut s, "map F", f);
    push_one(&mut s, "map G", g);
    push_two(&mut s, "null phi", phi);
    s
}

/// A parsed resolution file.
#[derive(Clone, Debug)]
pub struct ResolutionData {
    pub target: Pic2,
    pub complex: TwoChainComplex,
    pub augmentation: OneMor,
    pub aug_null: TwoMor,
}

impl ResolutionData {
    pub fn to_text(&self) -> String {
        write_resolution_parts(&self.target, &self.complex, &self.augmentation, &self.aug_null)
    }

    /// `M <- P_0 <- P_1 <- ...` with the augmentation as `L_1`.
    pub fn augmented(&self) -> Result<TwoChainComplex> {
        let c = &self.complex;
        let mut objects = vec![self.target.clone()];
        objects.extend(c.objects().iter().cloned());
        let mut maps = vec![self.augmentation.clone()];
        maps.extend(c.maps().iter().cloned());
        let mut nulls = Vec::new();
        if !c.is_empty() {
            nulls.push(self.aug_null.clone());
        }
        nulls.extend(c.nulls().iter().cloned());
        TwoChainComplex::new_unchecked(objects, maps, nulls)
    }
}

/// Line cursor with one-based line numbers for error reports.
struct Lines<'a> {
    lines: Vec<&'a str>,
    pos: usize,
    /// Upper bound for any dimension, so that tiny inputs cannot request huge groups.
    budget: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let mut lines: Vec<&str> = text.split('\n').map(|l| l.strip_suffix('\r').unwrap_or(l)).collect();
        if lines.last() == Some(&"") {
            lines.pop();
        }
        Lines { lines, pos: 0, budget: text.len().max(64) }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { line: self.pos.max(1), msg: msg.into() })
    }

    fn next(&mut self) -> Result<&'a str> {
        match self.lines.get(self.pos) {
            Some(l) => {
                self.pos += 1;
                Ok(l)
            }
            None => {
                self.pos += 1;
                self.err("unexpected end of input")
            }
        }
    }

    fn expect(&mut self, want: &str) -> Result<()> {
        let l = self.next()?;
        if l.trim() != want {
            return self.err(format!("expected `{want}`, found `{}`", truncate(l)));
        }
        Ok(())
    }

    fn remaining(&self) -> usize {
        self.lines.len().saturating_sub(self.pos)
    }

    fn finish(&mut self) -> Result<()> {
        while let Some(l) = self.lines.get(self.pos) {
            self.pos += 1;
            if !l.trim().is_empty() {
                return self.err(format!("trailing content `{}`", truncate(l)));
            }
        }
        Ok(())
    }

    fn block(&mut self, rows: usize, cols: usize) -> Result<IntMatrix> {
        if rows > self.remaining() {
            self.pos = self.lines.len();
            return self.err(format!("expected {rows} matrix rows"));
        }
        let mut data = Vec::new();
        for _ in 0..rows {
            let l = self.next()?;
            let mut n = 0;
            for tok in l.split_whitespace() {
                n += 1;
                if n > cols {
                    break;
                }
                match BigInt::from_str(tok) {
                    Ok(v) => data.push(v),
                    Err(_) => return self.err(format!("`{}` is not an integer", truncate(tok))),
                }
            }
            if n != cols {
                return self.err(format!("expected {cols} entries in a matrix row"));
            }
        }
        Ok(IntMatrix::from_vec(rows, cols, data))
    }

    fn header_usize(&mut self, tok: Option<&str>, key: &str) -> Result<usize> {
        let Some(v) = tok.and_then(|t| t.strip_prefix(key)).and_then(|t| t.strip_prefix('=')) else {
            return self.err(format!("expected `{key}=<n>`"));
        };
        let n: usize = v.parse().or_else(|_| self.err(format!("`{}` is not a count", truncate(v))))?;
        self.bounded(n)
    }

    fn bounded(&self, n: usize) -> Result<usize> {
        if n > self.budget {
            return self.err(format!("dimension {n} exceeds the input size"));
        }
        Ok(n)
    }

    fn group(&mut self, label: &str) -> Result<FgAbPresentation> {
        let l = self.next()?;
        let mut toks = l.split_whitespace();
        if toks.next() != Some(label) {
            return self.err(format!("expected `{label} gens=<k> rels=<r>`"));
        }
        let gens = self.header_usize(toks.next(), "gens")?;
        let rels = self.header_usize(toks.next(), "rels")?;
        if toks.next().is_some() {
            return self.err("unexpected tokens after the group header");
        }
        let m = self.block(rels, gens)?;
        Ok(FgAbPresentation::new(gens, m))
    }

    fn pic2(&mut self) -> Result<Pic2> {
        self.expect("pic2")?;
        let c1 = self.group("group1")?;
        let c0 = self.group("group0")?;
        self.expect("diff")?;
        let d = self.block(c0.gens(), c1.gens())?;
        match Pic2::new(c1, c0, d) {
            Ok(p) => Ok(p),
            Err(e) => self.err(format!("differential: {e}")),
        }
    }

    fn hom(&mut self, s: &FgAbPresentation, t: &FgAbPresentation, what: &str) -> Result<AbHom> {
        let m = self.block(t.gens(), s.gens())?;
        match AbHom::new(s.clone(), t.clone(), m) {
            Ok(h) => Ok(h),
            Err(e) => self.err(format!("{what}: {e}")),
        }
    }

    fn one(&mut self, label: &str, s: &Pic2, t: &Pic2) -> Result<OneMor> {
        self.expect(label)?;
        let f1 = self.hom(s.c1(), t.c1(), &format!("{label} degree 1"))?;
        let f0 = self.hom(s.c0(), t.c0(), &format!("{label} degree 0"))?;
        OneMor::new_unchecked(s.clone(), t.clone(), f1, f0).or_else(|e| self.err(format!("{label}: {e}")))
    }

    fn two(&mut self, label: &str, from: OneMor) -> Result<TwoMor> {
        self.expect(label)?;
        let h = self.hom(from.source().c0(), from.target().c1(), label)?;
        let to = OneMor::zero(from.source(), from.target());
        TwoMor::new_unchecked(from, to, h).or_else(|e| self.err(format!("{label}: {e}")))
    }

    fn complex(&mut self) -> Result<TwoChainComplex> {
        let l = self.next()?;
        let Some(n) = l.trim().strip_prefix("complex n=") else {
            return self.err("expected `complex n=<N>`");
        };
        let n: usize = n.parse().or_else(|_| self.err(format!("`{}` is not a length", truncate(n))))?;
        // every object takes at least five lines
        if n >= self.remaining() / 5 {
            return self.err(format!("input too short for a complex of length {n}"));
        }
        let mut objects = Vec::with_capacity(n + 1);
        for i in 0..=n {
            self.expect(&format!("object {i}"))?;
            objects.push(self.pic2()?);
        }
        let mut maps: Vec<OneMor> = Vec::with_capacity(n);
        for i in 1..=n {
            maps.push(self.one(&format!("map {i}"), &objects[i], &objects[i - 1])?);
        }
        let mut nulls = Vec::with_capacity(n.saturating_sub(1));
        for k in 2..=n {
            let from = maps[k - 2].compose(&maps[k - 1]).or_else(|e| self.err(e.to_string()))?;
            nulls.push(self.two(&format!("null {k}"), from)?);
        }
        TwoChainComplex::new_unchecked(objects, maps, nulls).or_else(|e| self.err(e.to_string()))
    }
}

fn truncate(s: &str) -> String {
    s.chars().take(40).collect()
}

pub fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let mut p = Lines::new(text);
    let l = p.next()?;
    let mut toks = l.split_whitespace();
    let (Some(r), Some(c), None) = (toks.next(), toks.next(), toks.next()) else {
        return p.err("expected `<rows> <cols>`");
    };
    let (Ok(rows), Ok(cols)) = (r.parse::<usize>(), c.parse::<usize>()) else {
        return p.err("matrix dimensions must be non-negative integers");
    };
    let m = p.block(rows, p.bounded(cols)?)?;
    p.finish()?;
    Ok(m)
}

pub fn parse_pic2(text: &str) -> Result<Pic2> {
    let mut p = Lines::new(text);
    let v = p.pic2()?;
    p.finish()?;
    Ok(v)
}

pub fn parse_complex(text: &str) -> Result<TwoChainComplex> {
    let mut p = Lines::new(text);
    let c = p.complex()?;
    p.finish()?;
    Ok(c)
}

pub fn parse_resolution(text: &str) -> Result<ResolutionData> {
    let mut p = Lines::new(text);
    p.expect("resolution")?;
    p.expect("target")?;
    let target = p.pic2()?;
    let complex = p.complex()?;
    let augmentation = p.one("augmentation", &complex.object(0), &target)?;
    let from = augmentation.compose(&complex.map(1)).or_else(|e| p.err(e.to_string()))?;
    let aug_null = p.two("augmentation_null", from)?;
    p.finish()?;
    Ok(ResolutionData { target, complex, augmentation, aug_null })
}

pub fn parse_extension(text: &str) -> Result<ExtensionData> {
    let mut p = Lines::new(text);
    p.expect("extension")?;
    let mut objs = Vec::with_capacity(3);
    for label in ["A", "B", "C"] {
        p.expect(&format!("object {label}"))?;
        objs.push(p.pic2()?);
    }
    let f = p.one("map F", &objs[0], &objs[1])?;
    let g = p.one("map G", &objs[1], &objs[2])?;
    let from = g.compose(&f).or_else(|e| p.err(e.to_string()))?;
    let phi = p.two("null phi", from)?;
    p.finish()?;
    Ok(ExtensionData { f, g, phi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolve::projective_resolution;

    fn cyc(n: i64) -> FgAbPresentation {
        FgAbPresentation::cyclic(n)
    }

    #[test]
    fn matrix_round_trip_bit_exact() {
        let text = "2 3\n1 -2 0\n40 5 6\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(write_matrix(&m), text);
        let empty = "0 3\n";
        assert_eq!(write_matrix(&parse_matrix(empty).unwrap()), empty);
        let no_cols = "2 0\n\n\n";
        assert_eq!(write_matrix(&parse_matrix(no_cols).unwrap()), no_cols);
    }

    #[test]
    fn pic2_round_trip() {
        let text = "pic2\ngroup1 gens=1 rels=0\ngroup0 gens=1 rels=1\n12\ndiff\n4\n";
        let p = parse_pic2(text).unwrap();
        assert_eq!(write_pic2(&p), text);
        assert_eq!(p.pi0().canonical().to_string(), "Z/4");
        assert_eq!(p.pi1().canonical().to_string(), "Z");
    }

    #[test]
    fn ill_defined_differential_rejected() {
        let text = "pic2\ngroup1 gens=1 rels=1\n2\ngroup0 gens=1 rels=0\ndiff\n1\n";
        assert!(matches!(parse_pic2(text), Err(Error::Parse { .. })));
    }

    #[test]
    fn resolution_round_trip() {
        let r = projective_resolution(&Pic2::discrete(cyc(6)), 2);
        let text = write_resolution(&r);
        let back = parse_resolution(&text).unwrap();
        assert_eq!(back.complex, r.complex());
        assert_eq!(back.augmented().unwrap(), *r.augmented());
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn complex_and_extension_round_trip() {
        let c = TwoChainComplex::discrete(
            vec![cyc(0), cyc(0), cyc(2)],
            vec![IntMatrix::from_i64(1, 1, &[2]), IntMatrix::from_i64(1, 1, &[0])],
        )
        .unwrap();
        let text = write_complex(&c);
        assert_eq!(parse_complex(&text).unwrap(), c);
        assert_eq!(write_complex(&parse_complex(&text).unwrap()), text);

        let e = crate::resolve::Extension::split(&Pic2::discrete(cyc(2)), &Pic2::discrete(cyc(3)));
        let text = write_extension(&e.f, &e.g, &e.phi);
        let back = parse_extension(&text).unwrap();
        assert_eq!(write_extension(&back.f, &back.g, &back.phi), text);
    }

    #[test]
    fn garbage_is_an_error() {
        for bad in ["", "pic2\n", "3 3\n1 2 3\n", "complex n=99999999999\n", "1 1\nx\n", "1 1\n1 2\n", "0 0\nextra\n"] {
            assert!(parse_matrix(bad).is_err() || parse_pic2(bad).is_err() || parse_complex(bad).is_err());
        }
        assert!(parse_complex("complex n=18446744073709551615\n").is_err());
        assert!(parse_matrix("99999999999999999999 1\n").is_err());
    }
}
