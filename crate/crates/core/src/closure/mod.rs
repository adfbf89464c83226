//! Closure computations at desk scale: the abelian case (closure of a cyclic
//! subgroup is its centralizer), rank certificates for one-edge cyclic
//! splittings, and the counterexample pipeline in [`counterexample`].

pub mod counterexample;

pub use counterexample::{
    counterexample_solution_set, dcl_separation_check, verify_counterexample, Bounds,
    CounterexampleReport, CounterexampleSetup,
};

use std::fmt;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::stallings::SubgroupGraph;
use crate::whitehead::{is_primitive, Decision};
use crate::word::{centralizer, Word};

/// One named verdict in a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &'static str, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name,
            pass,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "{}: {verdict}", self.name)
        } else {
            write!(f, "{}: {verdict} [{}]", self.name, self.detail)
        }
    }
}

/// Generator of the closure of `<w>`, i.e. of the centralizer of `w`.
pub fn abelian_closure(w: &Word) -> Result<Word> {
    centralizer(w)
}

/// A one-edge cyclic splitting of a subgroup `K` of the ambient free group,
/// given by bases of its vertex groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplittingCertificate {
    /// `K = B1 *_<c> B2` with `c_left ∈ B1` identified with `c_right ∈ B2`.
    Amalgam {
        ambient: Alphabet,
        left: Vec<Word>,
        right: Vec<Word>,
        c_left: Word,
        c_right: Word,
    },
    /// `K = B *_<u>` with `t⁻¹ u t = v`, `u, v ∈ B`.
    Hnn {
        ambient: Alphabet,
        base: Vec<Word>,
        u: Word,
        v: Word,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateReport {
    pub checks: Vec<Check>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn vertex_group(ambient: &Alphabet, basis: &[Word], label: &str) -> Result<SubgroupGraph> {
    let graph = SubgroupGraph::build(basis, ambient)?;
    if graph.rank() != basis.len() {
        return Err(Error::Certificate(format!(
            "{label}: {} words span a subgroup of rank {}",
            basis.len(),
            graph.rank()
        )));
    }
    Ok(graph)
}

/// Primitivity of a member of a vertex group, read in that group's own basis.
fn primitive_in(graph: &SubgroupGraph, c: &Word, label: &str) -> Result<Decision> {
    let local = graph
        .express(c)
        .ok_or_else(|| Error::Certificate(format!("edge element not in {label}")))?;
    let rank = graph.rank();
    if rank == 0 {
        return Ok(Decision::False);
    }
    let names: Vec<String> = (0..rank).map(|i| format!("b{i}")).collect();
    let alphabet = Alphabet::new(names)?;
    if local.is_empty() {
        return Ok(Decision::False);
    }
    is_primitive(&local, &alphabet)
}

fn decision_text(d: Decision) -> &'static str {
    match d {
        Decision::True => "primitive",
        Decision::False => "not primitive",
        Decision::Inconclusive => "inconclusive (cap exceeded)",
    }
}

/// Checks the rank step of a compression argument: the edge element lies in
/// the vertex groups, is primitive in one of them, and consequently each
/// vertex group has rank at most the rank of `K`.
pub fn compressed_step_check(cert: &SplittingCertificate) -> Result<CertificateReport> {
    match cert {
        SplittingCertificate::Amalgam {
            ambient,
            left,
            right,
            c_left,
            c_right,
        } => {
            let g1 = vertex_group(ambient, left, "B1")?;
            let g2 = vertex_group(ambient, right, "B2")?;
            if !g1.contains(c_left) {
                return Err(Error::Certificate("edge element not in B1".into()));
            }
            if !g2.contains(c_right) {
                return Err(Error::Certificate("edge element not in B2".into()));
            }
            let membership = Check::new("edge_in_factors", true, "c in B1 and c in B2");
            let p1 = primitive_in(&g1, c_left, "B1")?;
            let p2 = primitive_in(&g2, c_right, "B2")?;
            let either = p1 == Decision::True || p2 == Decision::True;
            let primitivity = Check::new(
                "edge_primitive",
                either,
                format!("B1: {}; B2: {}", decision_text(p1), decision_text(p2)),
            );
            let (r1, r2) = (left.len() as i64, right.len() as i64);
            let rk = r1 + r2 - 1;
            let ranks = Check::new(
                "rank_bound",
                either && r1 <= rk && r2 <= rk,
                format!("rk(B1) = {r1}, rk(B2) = {r2}, rk(K) = {rk}"),
            );
            Ok(CertificateReport {
                checks: vec![membership, primitivity, ranks],
            })
        }
        SplittingCertificate::Hnn {
            ambient,
            base,
            u,
            v,
        } => {
            let g = vertex_group(ambient, base, "B")?;
            if !g.contains(u) || !g.contains(v) {
                return Err(Error::Certificate("edge element not in B".into()));
            }
            let membership = Check::new("edge_in_factors", true, "u and v in B");
            let pu = primitive_in(&g, u, "B")?;
            let pv = primitive_in(&g, v, "B")?;
            let either = pu == Decision::True || pv == Decision::True;
            let primitivity = Check::new(
                "edge_primitive",
                either,
                format!("u: {}; v: {}", decision_text(pu), decision_text(pv)),
            );
            // Sliding t along a primitive edge element: K is free of rank rk(B).
            let r = base.len();
            let ranks = Check::new(
                "rank_bound",
                either,
                format!(
                    "rk(B) = {r}, rk(K) = {}",
                    if either { r.to_string() } else { "?".into() }
                ),
            );
            Ok(CertificateReport {
                checks: vec![membership, primitivity, ranks],
            })
        }
    }
}

/// Reads a certificate file.
///
/// ```text
/// gens x y z
/// b1 x
/// b1 y
/// b2 z
/// edge x y x^-1 y^-1 = z
/// ```
///
/// or, for an HNN certificate, `base <word>` lines and `hnn <u> -> <v>`.
pub fn parse_certificate(text: &str) -> Result<SplittingCertificate> {
    let mut ambient = None;
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut base = Vec::new();
    let mut edge = None;
    let mut hnn = None;
    let mut pending: Vec<(&str, String)> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match key {
            "gens" => ambient = Some(Alphabet::parse(rest)?),
            "b1" | "b2" | "base" | "edge" | "hnn" => pending.push((key, rest.to_string())),
            _ => {
                return Err(Error::Parse(format!(
                    "unrecognized certificate line `{line}`"
                )))
            }
        }
    }
    let ambient = ambient.ok_or_else(|| Error::Parse("certificate needs a `gens` line".into()))?;
    for (key, rest) in pending {
        match key {
            "b1" => left.push(ambient.parse_word(&rest)?),
            "b2" => right.push(ambient.parse_word(&rest)?),
            "base" => base.push(ambient.parse_word(&rest)?),
            "edge" => {
                let (a, b) = rest
                    .split_once('=')
                    .ok_or_else(|| Error::Parse("expected `edge <word> = <word>`".into()))?;
                edge = Some((ambient.parse_word(a)?, ambient.parse_word(b)?));
            }
            _ => {
                let (a, b) = rest
                    .split_once("->")
                    .ok_or_else(|| Error::Parse("expected `hnn <u> -> <v>`".into()))?;
                hnn = Some((ambient.parse_word(a)?, ambient.parse_word(b)?));
            }
        }
    }
    match (edge, hnn) {
        (Some((c_left, c_right)), None) => Ok(SplittingCertificate::Amalgam {
            ambient,
            left,
            right,
            c_left,
            c_right,
        }),
        (None, Some((u, v))) => Ok(SplittingCertificate::Hnn {
            ambient,
            base,
            u,
            v,
        }),
        _ => Err(Error::Parse(
            "certificate needs exactly one of `edge` or `hnn`".into(),
        )),
    }
}
