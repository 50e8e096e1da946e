use std::fs;
use std::path::Path;

use pic2ha::complexes::{homology, is_relative_2exact_at, TwoChainComplex, Violation};
use pic2ha::derived::{long_2exact_sequence, working_length, AdditiveFunctor, PointStatus};
use pic2ha::pic2::Pic2;
use pic2ha::resolve::{projective_resolution, projective_resolution_seeded, Extension};
use pic2ha::text::{
    parse_complex, parse_extension, parse_matrix, parse_pic2, parse_resolution, write_pic2, write_resolution,
    ResolutionData,
};
use pic2ha::zlin::{snf, tensor_oracle, tor1_oracle, FgAbPresentation};
use rayon::prelude::*;

use crate::cache::{self, Cache};
use crate::report::{group, Format, Report};
use crate::{Command, Failure, RangeSpec, TableFunctor};

const MAX_LENGTH: usize = 64;

pub fn dispatch(cmd: &Command, cache: &Cache, r: &mut Report) -> Result<(), Failure> {
    match cmd {
        Command::Snf { file } => snf_cmd(file, r),
        Command::Pi { file } => pi_cmd(file, r),
        Command::Homology { file, degree } => homology_cmd(file, *degree, r),
        Command::Resolve { file, length, seed } => resolve_cmd(file, *length, *seed, cache, r),
        Command::Derived { file, functor, degree, length, seed } => {
            derived_cmd(file, &functor.0, *degree, length.unwrap_or(0), *seed, cache, r)
        }
        Command::Longseq { file, functor, length } => longseq_cmd(file, &functor.0, *length, r),
        Command::Check { file } => check_cmd(file, r),
        Command::Table { functor: TableFunctor::Tensor, range } => table_cmd(*range, cache, r),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parsed<T>(path: &Path, v: pic2ha::Result<T>) -> Result<T, Failure> {
    v.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn check_length(length: usize) -> Result<(), Failure> {
    if length > MAX_LENGTH {
        return Err(Failure::Input(format!("length {length} exceeds {MAX_LENGTH}")));
    }
    Ok(())
}

fn snf_cmd(file: &Path, r: &mut Report) -> Result<(), Failure> {
    let m = parsed(file, parse_matrix(&read(file)?))?;
    let (s, u, v) = snf(&m);
    r.matrix("S", &s);
    r.matrix("U", &u);
    r.matrix("V", &v);
    Ok(())
}

fn pi_cmd(file: &Path, r: &mut Report) -> Result<(), Failure> {
    let p = parsed(file, parse_pic2(&read(file)?))?;
    r.kv("pi0", group(p.pi0()));
    r.kv("pi1", group(p.pi1()));
    Ok(())
}

fn report_violations(r: &mut Report, what: &str, vs: &[Violation]) -> Failure {
    for (k, v) in vs.iter().enumerate() {
        r.status(&format!("{what}.violation.{k}"), &format!("{what} index {}: {}", v.index, v.identity), false, "");
    }
    let first = &vs[0];
    Failure::Certificate(format!("{what}: {} at index {}", first.identity, first.index))
}

fn certify_complex(r: &mut Report, what: &str, c: &TwoChainComplex) -> Result<(), Failure> {
    match c.check() {
        Ok(cert) => {
            let detail = format!("{} identities", cert.identities_checked);
            r.status(what, what, true, &detail);
            Ok(())
        }
        Err(vs) => Err(report_violations(r, what, &vs)),
    }
}

fn homology_cmd(file: &Path, degree: i64, r: &mut Report) -> Result<(), Failure> {
    let c = parsed(file, parse_complex(&read(file)?))?;
    if let Err(vs) = c.check() {
        return Err(report_violations(r, "complex", &vs));
    }
    let h = homology(&c, degree)?;
    r.kv("degree", degree);
    r.pis("", "", &h);
    Ok(())
}

/// Whether a resolution came from the cache.
#[derive(Clone, Debug, PartialEq, Eq)]
enum CacheStatus {
    Hit,
    Miss,
    /// An entry was present but unusable and has been replaced.
    Replaced,
}

struct Resolved {
    key: String,
    data: ResolutionData,
    status: CacheStatus,
    write_error: Option<String>,
}

/// A cached entry is used only if it re-serializes to itself and resolves the right target.
fn validate(text: &str, m: &Pic2, length: usize) -> Option<ResolutionData> {
    let data = parse_resolution(text).ok()?;
    let ok = data.target == *m
        && data.complex.len() == length
        && data.to_text() == text
        && data.augmented().ok().is_some_and(|a| a.check().is_ok());
    ok.then_some(data)
}

fn resolve_cached(cache: &Cache, m: &Pic2, length: usize, seed: Option<u64>) -> Result<Resolved, Failure> {
    let key = cache::key(&write_pic2(m), length, seed);
    let mut status = CacheStatus::Miss;
    if let Some(text) = cache.get(&key) {
        match validate(&text, m, length) {
            Some(data) => return Ok(Resolved { key, data, status: CacheStatus::Hit, write_error: None }),
            None => status = CacheStatus::Replaced,
        }
    }
    let res = match seed {
        Some(s) => projective_resolution_seeded(m, length, s),
        None => projective_resolution(m, length),
    };
    let text = write_resolution(&res);
    let write_error = cache.put(&key, &text).err().map(|e| e.to_string());
    let data = parse_resolution(&text).map_err(|e| Failure::Certificate(format!("resolution does not reload: {e}")))?;
    Ok(Resolved { key, data, status, write_error })
}

fn note_cache(r: &mut Report, cache: &Cache, res: &Resolved) {
    let what = match res.status {
        CacheStatus::Hit => "hit",
        CacheStatus::Miss => "miss",
        CacheStatus::Replaced => "corrupt entry replaced",
    };
    r.note(&format!("cache {what}: {}", cache.path(&res.key).display()));
    if let Some(e) = &res.write_error {
        r.note(&format!("cache write failed: {e}"));
    }
}

fn resolve_cmd(file: &Path, length: usize, seed: Option<u64>, cache: &Cache, r: &mut Report) -> Result<(), Failure> {
    check_length(length)?;
    let m = parsed(file, parse_pic2(&read(file)?))?;
    let res = resolve_cached(cache, &m, length, seed)?;
    note_cache(r, cache, &res);
    r.kv("key", &res.key);
    r.kv("length", length);
    r.text(&res.data.to_text());
    let aug = res.data.augmented()?;
    certify_complex(r, "complex", &aug)?;
    let mut failing = Vec::new();
    for n in 0..=aug.len() as i64 {
        let cert = is_relative_2exact_at(&aug, n)?;
        let detail = format!("pi0 = {}, pi1 = {}", group(&cert.pi0), group(&cert.pi1));
        let key = format!("point.{n}");
        if cert.exact {
            r.status(&key, &format!("exact at point {n}"), true, "");
        } else if n as usize >= length {
            // the top of a truncated resolution is not covered
            match r.format() {
                Format::Text => r.text(&format!("OPEN point {n} (truncation): {detail}")),
                Format::Records => r.kv(&key, "OPEN"),
            }
        } else {
            r.status(&key, &format!("exact at point {n}"), false, &detail);
            failing.push(n);
        }
    }
    match failing.first() {
        None => Ok(()),
        Some(n) => Err(Failure::Certificate(format!("resolution not exact at point {n}"))),
    }
}

fn derived_cmd(
    file: &Path,
    t: &AdditiveFunctor,
    degree: usize,
    length: usize,
    seed: Option<u64>,
    cache: &Cache,
    r: &mut Report,
) -> Result<(), Failure> {
    let length = working_length(degree, length);
    check_length(length)?;
    let m = parsed(file, parse_pic2(&read(file)?))?;
    let res = resolve_cached(cache, &m, length, seed)?;
    note_cache(r, cache, &res);
    let value = homology(&t.apply_complex(&res.data.complex)?, degree as i64)?;
    r.kv("functor", t);
    r.kv("degree", degree);
    r.pis("", "", &value);
    Ok(())
}

fn longseq_cmd(file: &Path, t: &AdditiveFunctor, length: usize, r: &mut Report) -> Result<(), Failure> {
    check_length(length)?;
    let e = parsed(file, parse_extension(&read(file)?))?;
    let named = [("map F", e.f.check()), ("map G", e.g.check()), ("null phi", e.phi.check())];
    for (what, res) in named {
        if let Err(err) = res {
            r.status(&what.replace(' ', "."), what, false, &err.to_string());
            return Err(Failure::Certificate(format!("{what}: {err}")));
        }
    }
    let ext = Extension::new(e.f, e.g, e.phi).map_err(|err| Failure::Certificate(err.to_string()))?;
    let seq = long_2exact_sequence(t, &ext, length)?;
    r.kv("functor", t);
    r.kv("length", length);
    let mut failing = Vec::new();
    for (k, term) in seq.terms.iter().enumerate() {
        let label = term.label();
        r.pis(&format!("{label}: "), &label, &term.value);
        if let Some(cert) = seq.certificates.iter().find(|c| c.index == k) {
            let detail = match &cert.status {
                PointStatus::Exact => String::new(),
                PointStatus::NotExact { pi0, pi1 } => format!("pi0 = {}, pi1 = {}", group(pi0), group(pi1)),
            };
            r.status(&format!("{label}.exact"), &format!("2-exact at {label}"), cert.exact(), &detail);
            if !cert.exact() {
                failing.push(label);
            }
        }
    }
    match failing.first() {
        None => Ok(()),
        Some(l) => Err(Failure::Certificate(format!("sequence not 2-exact at {l}"))),
    }
}

fn check_cmd(file: &Path, r: &mut Report) -> Result<(), Failure> {
    let text = read(file)?;
    let head = text.lines().map(str::trim).find(|l| !l.is_empty()).unwrap_or("");
    match head {
        "pic2" => {
            let p = parsed(file, parse_pic2(&text))?;
            r.status("pic2", "differential respects relations", true, "");
            r.pis("", "", &p);
            Ok(())
        }
        "resolution" => {
            let d = parsed(file, parse_resolution(&text))?;
            let aug = d.augmented()?;
            certify_complex(r, "complex", &aug)?;
            let len = d.complex.len();
            let mut failing = None;
            for n in 0..len.max(1) as i64 {
                let cert = is_relative_2exact_at(&aug, n)?;
                let detail = if cert.exact {
                    String::new()
                } else {
                    format!("pi0 = {}, pi1 = {}", group(&cert.pi0), group(&cert.pi1))
                };
                r.status(&format!("point.{n}"), &format!("exact at point {n}"), cert.exact, &detail);
                if !cert.exact && failing.is_none() {
                    failing = Some(n);
                }
            }
            match failing {
                None => Ok(()),
                Some(n) => Err(Failure::Certificate(format!("resolution not exact at point {n}"))),
            }
        }
        "extension" => {
            let e = parsed(file, parse_extension(&text))?;
            let mut first = None;
            for (what, res) in [("map F", e.f.check()), ("map G", e.g.check()), ("null phi", e.phi.check())] {
                let detail = res.as_ref().err().map(ToString::to_string).unwrap_or_default();
                r.status(&what.replace(' ', "."), what, res.is_ok(), &detail);
                if res.is_err() && first.is_none() {
                    first = Some(format!("{what}: {detail}"));
                }
            }
            if let Some(msg) = first {
                return Err(Failure::Certificate(msg));
            }
            match Extension::new(e.f, e.g, e.phi) {
                Ok(_) => {
                    r.status("extension", "extension", true, "");
                    Ok(())
                }
                Err(err) => {
                    r.status("extension", "extension", false, &err.to_string());
                    Err(Failure::Certificate(err.to_string()))
                }
            }
        }
        h if h.starts_with("complex") => {
            let c = parsed(file, parse_complex(&text))?;
            certify_complex(r, "complex", &c)
        }
        _ => {
            let m = parsed(file, parse_matrix(&text))?;
            r.status("matrix", &format!("matrix {}x{}", m.rows(), m.cols()), true, "");
            Ok(())
        }
    }
}

struct Cell {
    a: i64,
    b: i64,
    l0: Pic2,
    l1: Pic2,
    agrees: bool,
}

fn table_cmd(range: RangeSpec, cache: &Cache, r: &mut Report) -> Result<(), Failure> {
    let values: Vec<i64> = (range.lo..=range.hi).collect();
    let resolved: Vec<Result<Resolved, Failure>> = values
        .par_iter()
        .map(|&a| resolve_cached(cache, &Pic2::discrete(FgAbPresentation::cyclic(a)), 3, None))
        .collect();
    let mut resolutions = Vec::with_capacity(resolved.len());
    for res in resolved {
        let res = res?;
        note_cache(r, cache, &res);
        resolutions.push(res.data);
    }
    let grid: Vec<(usize, i64)> = (0..values.len()).flat_map(|i| values.iter().map(move |&b| (i, b))).collect();
    let cells: Vec<Result<Cell, Failure>> = grid
        .par_iter()
        .map(|&(i, b)| {
            let a = values[i];
            let t = AdditiveFunctor::tensor(FgAbPresentation::cyclic(b));
            let tp = t.apply_complex(&resolutions[i].complex)?;
            let l0 = homology(&tp, 0)?;
            let l1 = homology(&tp, 1)?;
            let (za, zb) = (FgAbPresentation::cyclic(a), FgAbPresentation::cyclic(b));
            let (tensor, tor) = (tensor_oracle(&za, &zb), tor1_oracle(&za, &zb));
            let same = |x: &FgAbPresentation, y: &FgAbPresentation| x.canonical().same_type(y.canonical());
            let agrees = same(l0.pi0(), &tensor)
                && same(l0.pi1(), &tor)
                && same(l1.pi0(), &tor)
                && same(l1.pi1(), &FgAbPresentation::trivial());
            Ok(Cell { a, b, l0, l1, agrees })
        })
        .collect();
    let mut mismatches = Vec::new();
    for cell in cells {
        let c = cell?;
        let key = format!("a{}.b{}", c.a, c.b);
        match r.format() {
            Format::Text => {
                let (l0, l1) = (&c.l0, &c.l1);
                let line = format!(
                    "a = {} b = {} L0: pi0 = {}, pi1 = {}; L1: pi0 = {}, pi1 = {}",
                    c.a,
                    c.b,
                    group(l0.pi0()),
                    group(l0.pi1()),
                    group(l1.pi0()),
                    group(l1.pi1())
                );
                r.status(&key, &line, c.agrees, "");
            }
            Format::Records => {
                r.pis("", &format!("{key}.L0"), &c.l0);
                r.pis("", &format!("{key}.L1"), &c.l1);
                r.status(&format!("{key}.oracle"), "", c.agrees, "");
            }
        }
        if !c.agrees {
            mismatches.push(key);
        }
    }
    match mismatches.first() {
        None => Ok(()),
        Some(k) => Err(Failure::Oracle(format!("{} cells disagree, first {k}", mismatches.len()))),
    }
}
