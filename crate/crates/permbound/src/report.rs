//! Serializable reports. JSON is the machine format; `render_text` gives the
//! human one. Nothing here depends on wall-clock time, so equal inputs and
//! seeds give byte-identical output.

use std::fmt::Write as _;

use permbound_core::bounds::{Analysis, AnalysisConfig, BlSource, BoundReport};
use permbound_core::construct::{Construction, Infeasibility, PropertyCertificate};
use permbound_core::genrank::RankMethod;
use permbound_core::structure::contains_alternating;
use permbound_core::Group;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankJson {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub method: String,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlJson {
    pub value: f64,
    pub achieved_by: String,
    pub d_list: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub degree: usize,
    pub order: String,
    pub primitive: bool,
    pub contains_alt: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub status: String,
    pub note: String,
}

impl From<&BoundReport> for CheckJson {
    fn from(r: &BoundReport) -> Self {
        CheckJson {
            name: r.name.to_string(),
            lhs: finite(r.lhs),
            rhs: finite(r.rhs),
            status: r.status.as_str().to_string(),
            note: r.note.clone(),
        }
    }
}

impl CheckJson {
    pub fn is_violation(&self) -> bool {
        self.status == "fails"
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub case: String,
    pub n: usize,
    pub r: usize,
    pub s: usize,
    pub r_tilde: usize,
    pub s_tilde: usize,
    pub d: f64,
    pub bound: f64,
    /// `d(G) log|G|` with the upper bound on `d(G)`.
    pub value: f64,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupReport {
    pub schema_version: u32,
    pub group: String,
    pub degree: usize,
    pub order: String,
    pub generators: Vec<String>,
    pub transitive: bool,
    pub primitive: Option<bool>,
    pub d: RankJson,
    pub a: Option<usize>,
    pub bl: Option<BlJson>,
    pub decomposition: Option<Vec<ComponentJson>>,
    pub checks: Vec<CheckJson>,
    pub certificate: Option<CertificateJson>,
    pub seed: u64,
    pub element_cap: u64,
}

impl GroupReport {
    pub fn new(name: &str, group: &Group, analysis: &Analysis, cfg: &AnalysisConfig) -> Self {
        let rank = &analysis.rank;
        let d = RankJson {
            lower: rank.lower,
            upper: rank.upper,
            exact: rank.exact,
            method: match rank.method {
                RankMethod::Exhaustive => "exhaustive".to_string(),
                RankMethod::Randomized { trials, .. } => format!("randomized ({trials} trials)"),
            },
            witness: rank.witness.iter().map(ToString::to_string).collect(),
        };
        let bl = analysis.bl.as_ref().map(|b| BlJson {
            value: b.value,
            achieved_by: match b.achieved_by {
                BlSource::Component(i) => format!("component {i}"),
                BlSource::Floor => "floor c2".to_string(),
            },
            d_list: b.d_list.clone(),
        });
        let decomposition = analysis.decomposition.as_ref().map(|dec| {
            dec.components
                .iter()
                .map(|c| ComponentJson {
                    degree: c.degree,
                    order: c.group.order().to_string(),
                    primitive: true,
                    contains_alt: contains_alternating(&c.group),
                })
                .collect()
        });
        let certificate = analysis.certificate.as_ref().map(|c| CertificateJson {
            case: c.case.as_str().to_string(),
            n: c.n,
            r: c.r,
            s: c.s,
            r_tilde: c.r_tilde,
            s_tilde: c.s_tilde,
            d: c.d,
            bound: c.bound,
            value: c.report.lhs,
            status: c.report.status.as_str().to_string(),
        });
        GroupReport {
            schema_version: SCHEMA_VERSION,
            group: name.to_string(),
            degree: analysis.degree,
            order: analysis.order.to_string(),
            generators: group.generators().iter().map(ToString::to_string).collect(),
            transitive: analysis.transitive,
            primitive: analysis.primitive,
            d,
            a: analysis.composition_length,
            bl,
            decomposition,
            checks: analysis.checks.iter().map(CheckJson::from).collect(),
            certificate,
            seed: cfg.seed,
            element_cap: cfg.element_cap,
        }
    }

    pub fn violations(&self) -> impl Iterator<Item = &CheckJson> {
        self.checks.iter().filter(|c| c.is_violation())
    }

    pub fn has_violation(&self) -> bool {
        self.violations().next().is_some()
    }
}

fn opt<T: std::fmt::Display>(x: Option<T>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn num(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), |v| format!("{v:.6}"))
}

pub fn render_check(out: &mut String, c: &CheckJson) {
    let _ = writeln!(
        out,
        "  {:<30} {:<18} lhs {:>14}  rhs {:>14}  {}",
        c.name,
        c.status,
        num(c.lhs),
        num(c.rhs),
        c.note
    );
}

pub fn render_text(r: &GroupReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "group        {}", r.group);
    let _ = writeln!(out, "degree       {}", r.degree);
    let _ = writeln!(out, "order        {}", r.order);
    let _ = writeln!(out, "transitive   {}", r.transitive);
    let _ = writeln!(out, "primitive    {}", opt(r.primitive));
    if let Some(dec) = &r.decomposition {
        let parts: Vec<String> = dec
            .iter()
            .map(|c| {
                let alt = if c.contains_alt { ", alt" } else { "" };
                format!("[deg {}, order {}{alt}]", c.degree, c.order)
            })
            .collect();
        let _ = writeln!(out, "components   {}", parts.join(" "));
    }
    if let Some(bl) = &r.bl {
        let _ = writeln!(out, "bl           {:.6} ({})", bl.value, bl.achieved_by);
    }
    let d = if r.d.exact {
        format!("{} ({})", r.d.upper, r.d.method)
    } else {
        format!("{}..={} ({})", r.d.lower, r.d.upper, r.d.method)
    };
    let _ = writeln!(out, "d            {d}");
    let _ = writeln!(out, "a            {}", opt(r.a));
    if let Some(c) = &r.certificate {
        let _ = writeln!(
            out,
            "certificate  {} B = {:.6}, d log|G| = {:.6}, {}",
            c.case, c.bound, c.value, c.status
        );
    }
    let _ = writeln!(out, "checks");
    for c in &r.checks {
        render_check(&mut out, c);
    }
    let _ = writeln!(out, "seed         {}", r.seed);
    out
}

/// Properties of a constructed witness group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionJson {
    pub schema_version: u32,
    pub kind: String,
    pub n: usize,
    pub p: Option<u64>,
    pub in_alt: Option<bool>,
    pub strategy: String,
    pub uses_two_mod_four_gap: bool,
    pub degree: usize,
    pub order: String,
    pub orbit_lengths: Vec<usize>,
    pub transitive: bool,
    pub soluble: bool,
    pub generator_signs: Vec<i8>,
    /// The recomputed properties match what `kind` promises.
    pub verified: bool,
}

fn promised(
    kind: &str,
    n: usize,
    p: Option<u64>,
    in_alt: Option<bool>,
    c: &PropertyCertificate,
) -> bool {
    match kind {
        "soluble-alt" => c.is_soluble_transitive_alt(n),
        "two-orbit" => c.is_two_orbit_pprime(n, p.unwrap_or(2), in_alt.unwrap_or(false)),
        _ => c.degree == n && c.transitive && c.soluble && c.all_even(),
    }
}

impl ConstructionJson {
    pub fn new(
        kind: &str,
        n: usize,
        p: Option<u64>,
        in_alt: Option<bool>,
        c: &Construction,
    ) -> Self {
        let cert = PropertyCertificate::of(c);
        let verified = promised(kind, n, p, in_alt, &cert);
        ConstructionJson {
            schema_version: SCHEMA_VERSION,
            kind: kind.to_string(),
            n,
            p,
            in_alt,
            strategy: cert.strategy.as_str().to_string(),
            uses_two_mod_four_gap: cert.uses_two_mod_four_gap,
            degree: cert.degree,
            order: cert.order.to_string(),
            orbit_lengths: cert.orbit_lengths,
            transitive: cert.transitive,
            soluble: cert.soluble,
            generator_signs: cert.generator_signs,
            verified,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RejectedJson {
    pub lengths: [usize; 2],
    pub reason: String,
}

/// Record that no witness exists in the searched space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InfeasibilityJson {
    pub schema_version: u32,
    pub kind: String,
    pub n: usize,
    pub p: u64,
    pub in_alt: bool,
    pub feasible: bool,
    pub rejected: Vec<RejectedJson>,
}

impl From<&Infeasibility> for InfeasibilityJson {
    fn from(inf: &Infeasibility) -> Self {
        InfeasibilityJson {
            schema_version: SCHEMA_VERSION,
            kind: "two-orbit".to_string(),
            n: inf.n,
            p: inf.p,
            in_alt: inf.in_alt,
            feasible: false,
            rejected: inf
                .rejected
                .iter()
                .map(|r| RejectedJson {
                    lengths: [r.lengths.0, r.lengths.1],
                    reason: r.reason.to_string(),
                })
                .collect(),
        }
    }
}

/// One CSV row of the `f(n)` table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FTableCsvRow {
    pub n: usize,
    pub f: f64,
    pub f_over_n2: f64,
    pub witness: String,
}
