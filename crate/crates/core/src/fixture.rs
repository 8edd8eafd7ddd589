//! Hand-drawn error fixtures on the square torus.
//!
//! One directive per line, `#` starts a comment:
//!
//! ```text
//! size 5
//! Y 2 3.5          # Pauli on the edge whose midpoint is (2, 3.5)
//! site 3 0         # expected site check (vertex) in the syndrome
//! plaquette 1.5 2.5  # expected plaquette check, by face centre
//! ```
//!
//! When any `site` line is present the site syndrome must match the listed
//! vertices exactly; likewise for `plaquette`.

use crate::decoders::{decode_correlated, decode_standard, DecodeResult};
use crate::error::{Error, Result};
use crate::noise::{Pauli, PauliErrorPair};
use crate::syndrome::{residual_class, syndrome, HomologyClass, SyndromePair};
use crate::tiling::{square_edge_at, Family, SurfaceCode};

/// The error of the worked correlated-decoding example.
pub const FIG2: &str = include_str!("../fixtures/fig2.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub size: usize,
    pub error: PauliErrorPair,
    pub sites: Option<Vec<usize>>,
    pub plaquettes: Option<Vec<usize>>,
}

fn doubled(tok: &str, line: usize) -> Result<usize> {
    let v: f64 = tok
        .parse()
        .map_err(|_| Error::Parse(format!("line {line}: bad coordinate '{tok}'")))?;
    let d = 2.0 * v;
    if d < 0.0 || d.fract() != 0.0 {
        return Err(Error::Parse(format!(
            "line {line}: coordinate {tok} is not a non-negative multiple of 1/2"
        )));
    }
    Ok(d as usize)
}

pub fn parse_fixture(text: &str) -> Result<Fixture> {
    let mut size = None;
    let mut paulis: Vec<(usize, usize, usize, Pauli)> = Vec::new();
    let mut sites: Option<Vec<(usize, usize)>> = None;
    let mut plaqs: Option<Vec<(usize, usize)>> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            ["size", n] => {
                let n: usize = n
                    .parse()
                    .map_err(|_| Error::Parse(format!("line {line}: bad size '{n}'")))?;
                size = Some(n);
            }
            [kind @ ("site" | "plaquette"), x, y] => {
                let (x2, y2) = (doubled(x, line)?, doubled(y, line)?);
                let want = if *kind == "site" { 0 } else { 1 };
                if x2 % 2 != want || y2 % 2 != want {
                    return Err(Error::Parse(format!(
                        "line {line}: ({x}, {y}) is not a {kind} position"
                    )));
                }
                let list = if *kind == "site" { &mut sites } else { &mut plaqs };
                list.get_or_insert_with(Vec::new).push((x2 / 2, y2 / 2));
            }
            [p, x, y] => {
                let pauli: Pauli = p
                    .parse()
                    .map_err(|_| Error::Parse(format!("line {line}: unknown directive '{p}'")))?;
                paulis.push((line, doubled(x, line)?, doubled(y, line)?, pauli));
            }
            _ => return Err(Error::Parse(format!("line {line}: cannot parse '{}'", raw.trim()))),
        }
    }
    let l = size.ok_or_else(|| Error::Parse("missing 'size' line".into()))?;
    let in_range = |x: usize, y: usize, line: usize| {
        if x >= l || y >= l {
            Err(Error::Parse(format!("line {line}: ({x}, {y}) outside the {l}x{l} torus")))
        } else {
            Ok(y * l + x)
        }
    };
    let mut error = PauliErrorPair::identity(2 * l * l);
    for &(line, x2, y2, p) in &paulis {
        if x2 >= 2 * l || y2 >= 2 * l {
            return Err(Error::Parse(format!("line {line}: edge outside the {l}x{l} torus")));
        }
        let e = square_edge_at(l, x2, y2)
            .ok_or_else(|| Error::Parse(format!("line {line}: not an edge midpoint")))?;
        if error.get(e) != Pauli::I {
            return Err(Error::Parse(format!("line {line}: edge {e} given twice")));
        }
        error.set(e, p);
    }
    let index = |list: Option<Vec<(usize, usize)>>| -> Result<Option<Vec<usize>>> {
        list.map(|v| {
            let mut out = v
                .into_iter()
                .map(|(x, y)| in_range(x, y, 0))
                .collect::<Result<Vec<_>>>()?;
            out.sort_unstable();
            out.dedup();
            Ok(out)
        })
        .transpose()
    };
    Ok(Fixture {
        size: l,
        error,
        sites: index(sites)?,
        plaquettes: index(plaqs)?,
    })
}

impl Fixture {
    pub fn code(&self) -> Result<SurfaceCode> {
        SurfaceCode::new(Family::Square, self.size)
    }

    /// Syndrome of the fixture's error, checked against the listed marks.
    pub fn checked_syndrome(&self, code: &SurfaceCode) -> Result<SyndromePair> {
        let s = syndrome(code, &self.error);
        for (name, want, got) in [
            ("site", &self.sites, &s.s_x),
            ("plaquette", &self.plaquettes, &s.s_z),
        ] {
            if let Some(want) = want {
                if want != got {
                    return Err(Error::PreconditionViolation(format!(
                        "fixture lists {name} checks {want:?} but its error triggers {got:?}"
                    )));
                }
            }
        }
        Ok(s)
    }
}

#[derive(Clone, Debug)]
pub struct DemoOutcome {
    pub syndrome: SyndromePair,
    pub standard: DecodeResult,
    pub standard_class: HomologyClass,
    pub correlated: DecodeResult,
    pub correlated_class: HomologyClass,
}

/// Decodes the fixture with both decoders.
pub fn run_demo(fixture: &Fixture) -> Result<DemoOutcome> {
    let code = fixture.code()?;
    let s = fixture.checked_syndrome(&code)?;
    let standard = decode_standard(&code, &s)?;
    let correlated = decode_correlated(&code, &s)?;
    Ok(DemoOutcome {
        standard_class: residual_class(&code, &fixture.error, &standard.estimate)?,
        correlated_class: residual_class(&code, &fixture.error, &correlated.estimate)?,
        syndrome: s,
        standard,
        correlated,
    })
}
