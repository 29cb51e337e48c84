//! Argument structs and the computation behind each subcommand.

use std::fmt::Display;
use std::fs;
use std::path::PathBuf;

use accp_core::algebra::{
    classify_group_algebra, frobenius_root, irreducible_search_bounded, length_demo,
    rational_ge1_split, AlgebraElem, ExponentGroup, ExponentTruncation, FieldDescriptor,
    GroupDescriptor, SearchStatus,
};
use accp_core::construction::{
    accp_chain, construct as build, export_figure, verify_atoms, verify_conditions,
    AtomVerification,
};
use accp_core::exactnum::{BigRational, QuadRat};
use accp_core::groups::{
    classify_fg, classify_q_subgroup, witness_rank1_noncyclic, witness_rank2, FgGroupPresentation,
    IntMatrix, QSubgroupDescriptor, TorsionSpec, WitnessMonoid,
};
use accp_core::lattice::{
    atoms_certified, member_bounded, member_with_functional, positive_bound, zaks_truncation_with,
    LatticeMonoid, LatticePoint, LinearFunctional, ZaksConvention,
};
use accp_core::puiseux::{
    atoms_family, beta_generators, chain_certificate, member_truncated, normal_form_p, Beta,
    BetaTupleMode, NormalForm, PuiseuxFamily,
};
use accp_core::report::Check;
use clap::{ArgGroup, Args};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{execute, CertificateEnvelope, Outcome};

fn err<E: Display>(e: E) -> String {
    e.to_string()
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| format!("`{s}` is not a rational number"))
}

fn parse_family(s: &str) -> Result<PuiseuxFamily, String> {
    s.parse().map_err(err)
}

fn parse_json<T: serde::de::DeserializeOwned>(what: &str, s: &str) -> Result<T, String> {
    serde_json::from_str(s).map_err(|e| format!("invalid {what}: {e}"))
}

/// `pi-u`, `pi-v`, `sum`, or comma-separated entries `a + b*sqrt2`.
fn parse_functional(s: Option<&str>, dim: usize) -> Result<LinearFunctional, String> {
    match s.map(str::trim) {
        None | Some("sum") => Ok(LinearFunctional::coordinate_sum(dim)),
        Some("pi-u") => Ok(LinearFunctional::pi_u()),
        Some("pi-v") => Ok(LinearFunctional::pi_v()),
        Some(list) => list
            .split(',')
            .map(|c| c.parse::<QuadRat>().map_err(err))
            .collect::<Result<Vec<_>, _>>()
            .map(LinearFunctional),
    }
}

fn monoid_from_json(s: &str) -> Result<LatticeMonoid, String> {
    let gens: Vec<LatticePoint> = parse_json("generator list", s)?;
    let dim = gens.first().map_or(0, |g| g.dim());
    LatticeMonoid::new(dim, gens).map_err(err)
}

fn kebab<T: serde::de::DeserializeOwned>(what: &str, s: &str) -> Result<T, String> {
    serde_json::from_value(serde_json::Value::String(s.trim().to_string()))
        .map_err(|_| format!("unknown {what} `{s}`"))
}

fn atom_checks(report: &AtomVerification) -> Vec<Check> {
    let mut checks = Vec::new();
    for st in &report.stages {
        let k = st.stage;
        for c in &st.geometric_checks {
            checks.push(Check {
                name: format!("stage {k}: {}", c.name),
                ..c.clone()
            });
        }
        checks.push(Check::new(
            format!("stage {k}: geometric argument confirms every generator is an atom"),
            st.geometric_atoms.iter().all(|&a| a),
        ));
        if let Some(en) = &st.enumeration {
            checks.push(Check::new(
                format!("stage {k}: enumeration confirms every generator is an atom"),
                en.iter().all(|a| a.is_atom),
            ));
            checks.push(Check::new(
                format!("stage {k}: geometric and enumeration verdicts agree"),
                en.iter()
                    .zip(&st.geometric_atoms)
                    .all(|(a, &g)| a.is_atom == g),
            ));
        }
    }
    checks
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConstructArgs {
    #[arg(long, default_value_t = 1)]
    pub stages: usize,
    /// Verify the atom sets of every stage monoid.
    #[arg(long)]
    pub verify_atoms: bool,
    /// Last stage also checked by exhaustive enumeration.
    #[arg(long, default_value_t = 2)]
    pub enumerate_up_to: usize,
    /// Emit the ascending chain of principal ideals.
    #[arg(long)]
    pub chain: bool,
    #[arg(long)]
    #[serde(skip)]
    pub figure: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub csv: Option<PathBuf>,
}

pub fn construct(a: &ConstructArgs) -> Result<Outcome, String> {
    let state = build(a.stages).map_err(err)?;
    let mut checks = verify_conditions(&state).map_err(err)?;
    let atom_reports = if a.verify_atoms {
        let r = verify_atoms(&state, state.stage, a.enumerate_up_to).map_err(err)?;
        checks.extend(atom_checks(&r));
        Some(r.stages)
    } else {
        None
    };
    let chain = if a.chain {
        let c = accp_chain(&state).map_err(err)?;
        checks.extend(c.checks.iter().cloned());
        Some(c)
    } else {
        None
    };
    let mut files = Vec::new();
    if a.figure.is_some() || a.csv.is_some() {
        let fig = export_figure(&state).map_err(err)?;
        files.extend(a.figure.clone().map(|p| (p, fig.svg)));
        files.extend(a.csv.clone().map(|p| (p, fig.csv)));
    }
    let exact = serde_json::to_value(&state).map_err(err)?;
    let result = json!({
        "stage": state.stage,
        "points": exact["points"],
        "multipliers": exact["multipliers"],
        "bounds": exact["spreadBounds"],
        "atomReports": atom_reports,
        "chain": chain,
    });
    let mut out = Outcome::new(&result, checks)?;
    out.files = files;
    Ok(out)
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
#[command(group(ArgGroup::new("source").required(true).args(["generators", "stage", "family"])))]
pub struct AtomsArgs {
    /// JSON list of lattice points, e.g. "[[1,0],[1,1]]".
    #[arg(long)]
    pub generators: Option<String>,
    /// Functional positive on the generators: sum, pi-u, pi-v, or "a,b,...".
    #[arg(long, requires = "generators")]
    pub functional: Option<String>,
    /// Construction stage whose monoid is checked.
    #[arg(long)]
    pub stage: Option<usize>,
    #[arg(long, default_value_t = 2, requires = "stage")]
    pub enumerate_up_to: usize,
    /// Puiseux family: grams, prime-gap, geometric:a/b, reciprocal-primes, sparse-primes[:base].
    #[arg(long)]
    pub family: Option<String>,
    /// Generators covered by the spot check.
    #[arg(long, default_value_t = 8)]
    pub n: usize,
}

pub fn atoms(a: &AtomsArgs) -> Result<Outcome, String> {
    if let Some(g) = &a.generators {
        let m = monoid_from_json(g)?;
        let f = parse_functional(a.functional.as_deref(), m.dim())?;
        let reports = atoms_certified(&m, &f).map_err(err)?;
        let checks = vec![Check::new(
            "every factorization certificate re-sums",
            reports
                .iter()
                .filter_map(|r| r.certificate.as_ref())
                .all(|c| c.verify()),
        )];
        let atom_set: Vec<&LatticePoint> = reports
            .iter()
            .filter(|r| r.is_atom)
            .map(|r| &r.point)
            .collect();
        return Outcome::new(
            &json!({ "monoid": m, "functional": f.0.iter().map(ToString::to_string).collect::<Vec<_>>(), "atoms": atom_set, "reports": reports }),
            checks,
        );
    }
    if let Some(k) = a.stage {
        let state = build(k).map_err(err)?;
        let r = verify_atoms(&state, k, a.enumerate_up_to).map_err(err)?;
        let checks = atom_checks(&r);
        return Outcome::new(&r, checks);
    }
    let family = parse_family(a.family.as_deref().unwrap_or_default())?;
    let r = atoms_family(&family, a.n).map_err(err)?;
    let checks = vec![
        Check::new(
            format!("first {} generators are atoms of the truncation", a.n),
            r.spot_check_passed,
        ),
        Check::new(
            "every factorization certificate re-sums",
            r.entries
                .iter()
                .filter_map(|e| e.certificate.as_ref())
                .all(|c| c.verify()),
        ),
    ];
    Outcome::new(&r, checks)
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
#[command(group(ArgGroup::new("source").required(true).args(["stages", "family"])))]
pub struct ChainArgs {
    /// Chain of the lattice construction with this many stages.
    #[arg(long)]
    pub stages: Option<usize>,
    /// Puiseux family: grams, prime-gap, geometric:a/b.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, default_value_t = 8)]
    pub n: usize,
}

pub fn chain(a: &ChainArgs) -> Result<Outcome, String> {
    if let Some(s) = a.stages {
        let state = build(s).map_err(err)?;
        let c = accp_chain(&state).map_err(err)?;
        let checks = c.checks.clone();
        return Outcome::new(&c, checks);
    }
    let family = parse_family(a.family.as_deref().unwrap_or_default())?;
    let c = chain_certificate(&family, a.n).map_err(err)?;
    let checks = c.checks.clone();
    Outcome::new(&c, checks)
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
#[command(group(ArgGroup::new("source").required(true).args(["generators", "family"])))]
pub struct MemberArgs {
    /// JSON list of lattice points.
    #[arg(long, requires = "target")]
    pub generators: Option<String>,
    /// JSON lattice point, e.g. "[3,4]".
    #[arg(long)]
    pub target: Option<String>,
    /// Coefficient bound; without it a conclusive bound is derived from the functional.
    #[arg(long)]
    pub bound: Option<u64>,
    #[arg(long)]
    pub functional: Option<String>,
    #[arg(long, requires = "q")]
    pub family: Option<String>,
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    /// Rational target for the Puiseux case.
    #[arg(long)]
    pub q: Option<String>,
}

pub fn member(a: &MemberArgs) -> Result<Outcome, String> {
    if let Some(g) = &a.generators {
        let m = monoid_from_json(g)?;
        let target: LatticePoint = parse_json("target", a.target.as_deref().unwrap_or_default())?;
        let (membership, bound, conclusive) = match (a.bound, &a.functional) {
            (Some(b), None) => (member_bounded(&m, &target, b).map_err(err)?, b, false),
            (bound, f) => {
                let f = parse_functional(f.as_deref(), m.dim())?;
                let exact = positive_bound(&m, &target, &f).map_err(err)?;
                let b = bound.unwrap_or(exact);
                (
                    member_with_functional(&m, &target, b, &f).map_err(err)?,
                    b,
                    b >= exact,
                )
            }
        };
        let mut checks = Vec::new();
        if let Some(c) = membership.certificate() {
            checks.push(Check::new("certificate re-sums to the target", c.verify()));
        }
        return Outcome::new(
            &json!({ "monoid": m, "target": target, "bound": bound, "conclusive": conclusive, "membership": membership }),
            checks,
        );
    }
    let family = parse_family(a.family.as_deref().unwrap_or_default())?;
    let q = parse_rational(a.q.as_deref().unwrap_or_default())?;
    let membership = member_truncated(&family, a.n, &q).map_err(err)?;
    let mut checks = Vec::new();
    if let Some(c) = membership.certificate() {
        checks.push(Check::new("certificate re-sums to the target", c.verify()));
    }
    Outcome::new(
        &json!({ "family": family, "truncation": a.n, "q": q.to_string(), "membership": membership }),
        checks,
    )
}

fn presentation(relations: &str, generators: Option<usize>) -> Result<FgGroupPresentation, String> {
    let m: IntMatrix = parse_json("relation matrix", relations)?;
    match generators {
        Some(g) => FgGroupPresentation::new(g, m),
        None => FgGroupPresentation::from_relations(m),
    }
    .map_err(err)
}

fn rank1_witness(
    desc: &QSubgroupDescriptor,
    terms: usize,
    torsion: Option<&str>,
) -> Result<WitnessMonoid, String> {
    let spec: Option<TorsionSpec> = torsion.map(|t| parse_json("torsion spec", t)).transpose()?;
    witness_rank1_noncyclic(desc, terms, spec.as_ref())
        .map(WitnessMonoid::Splitting)
        .map_err(err)
}

fn witness_checks(w: &WitnessMonoid) -> Vec<Check> {
    let checks = match w {
        WitnessMonoid::LexCone(r) => &r.checks,
        WitnessMonoid::Splitting(r) => &r.checks,
    };
    checks
        .iter()
        .map(|c| Check {
            name: format!("witness: {}", c.name),
            ..c.clone()
        })
        .collect()
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
#[command(group(ArgGroup::new("group").required(true).args(["relations", "chain"])))]
pub struct ClassifyGroupArgs {
    /// JSON relation matrix; rows are relations among the generators.
    #[arg(long)]
    pub relations: Option<String>,
    /// Number of generators, when it differs from the matrix width.
    #[arg(long, requires = "relations")]
    pub generators: Option<usize>,
    /// Denominator chain of a subgroup of Q, e.g. "1,2,4,...*2".
    #[arg(long)]
    pub chain: Option<String>,
    /// Splitting identities emitted for a witness.
    #[arg(long, default_value_t = 4)]
    pub terms: usize,
    /// JSON torsion spec {"moduli": [...], "terms": [[...], ...]} for the witness.
    #[arg(long, requires = "chain")]
    pub torsion: Option<String>,
}

pub fn classify_group(a: &ClassifyGroupArgs) -> Result<Outcome, String> {
    if let Some(rel) = &a.relations {
        let pres = presentation(rel, a.generators)?;
        let cl = classify_fg(&pres);
        let mut checks = vec![
            Check::new("U*A*V = D with unimodular U, V", cl.snf_verified),
            Check::new(
                "hereditary atomicity agrees with hereditary ACCP",
                cl.hereditarily_atomic == cl.hereditary_accp,
            ),
        ];
        let witness =
            (!cl.hereditarily_atomic).then(|| WitnessMonoid::LexCone(witness_rank2(false)));
        if let Some(w) = &witness {
            checks.extend(witness_checks(w));
        }
        return Outcome::new(
            &json!({ "presentation": pres, "classification": cl, "witness": witness }),
            checks,
        );
    }
    let desc: QSubgroupDescriptor = a
        .chain
        .as_deref()
        .unwrap_or_default()
        .parse()
        .map_err(err)?;
    let cl = classify_q_subgroup(&desc);
    let mut checks = vec![Check::new(
        "hereditary atomicity agrees with hereditary ACCP",
        cl.hereditarily_atomic == cl.hereditary_accp,
    )];
    let witness = if cl.hereditarily_atomic {
        None
    } else {
        Some(rank1_witness(&desc, a.terms, a.torsion.as_deref())?)
    };
    if let Some(w) = &witness {
        checks.extend(witness_checks(w));
    }
    Outcome::new(&json!({ "classification": cl, "witness": witness }), checks)
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
#[command(group(ArgGroup::new("group").required(true).args(["relations", "chain"])))]
pub struct ClassifyAlgebraArgs {
    /// Field characteristic, 0 or a prime.
    #[arg(long = "char", default_value_t = 2)]
    pub characteristic: u64,
    /// The field is not algebraic over its prime field.
    #[arg(long)]
    pub transcendental: bool,
    #[arg(long)]
    pub relations: Option<String>,
    #[arg(long, requires = "relations")]
    pub generators: Option<usize>,
    #[arg(long)]
    pub chain: Option<String>,
}

pub fn classify_algebra(a: &ClassifyAlgebraArgs) -> Result<Outcome, String> {
    let field = FieldDescriptor {
        characteristic: a.characteristic,
        algebraic_over_prime_field: a.characteristic != 0 && !a.transcendental,
    };
    let mut checks = Vec::new();
    let group = match (&a.relations, &a.chain) {
        (Some(rel), _) => {
            let pres = presentation(rel, a.generators)?;
            checks.push(Check::new(
                "U*A*V = D with unimodular U, V",
                classify_fg(&pres).snf_verified,
            ));
            GroupDescriptor::FinitelyGenerated(pres)
        }
        (None, c) => {
            GroupDescriptor::RankOne(c.as_deref().unwrap_or_default().parse().map_err(err)?)
        }
    };
    let cl = classify_group_algebra(field, &group).map_err(err)?;
    Outcome::new(&cl, checks)
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FrobeniusArgs {
    /// Element of F_p[G], e.g. "1 + x^(1/2)".
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub p: u64,
    /// Exponent group: Z, Z[1/m] or Q; defaults to Z[1/p].
    #[arg(long)]
    pub group: Option<String>,
}

pub fn frobenius(a: &FrobeniusArgs) -> Result<Outcome, String> {
    let f = AlgebraElem::parse(&a.f, a.p).map_err(err)?;
    let group = match &a.group {
        Some(g) => g.parse::<ExponentGroup>().map_err(err)?,
        None => ExponentGroup::Localization {
            m: BigInt::from(a.p),
        },
    };
    let cert = frobenius_root(&f, &group).map_err(err)?;
    let checks = vec![
        Check::new("root^p re-multiplies to f", cert.verified),
        Check::new(
            "f is a unit or factors as root * root^(p-1)",
            cert.not_irreducible,
        ),
    ];
    Outcome::new(&cert, checks)
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LengthsArgs {
    /// Largest prime denominator considered.
    #[arg(long, default_value_t = 10)]
    pub bound: u64,
    #[arg(long, default_value_t = 2)]
    pub p: u64,
}

pub fn lengths(a: &LengthsArgs) -> Result<Outcome, String> {
    let d = length_demo(a.bound, a.p).map_err(err)?;
    let mut checks: Vec<Check> = d
        .factorizations
        .iter()
        .map(|f| Check::new(format!("(x^(1/{0}))^{0} = x", f.q), f.verified))
        .collect();
    checks.push(Check::new(
        "length set of 1 equals the primes up to the bound",
        d.monoid_length_set_of_one == d.lengths_of_x,
    ));
    checks.push(Check::new(
        "every generator 1/q has length set {1}",
        d.atom_length_sets.iter().all(|(_, l)| l == &[1]),
    ));
    Outcome::new(&d, checks)
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FigureArgs {
    #[arg(long, default_value_t = 1)]
    pub stages: usize,
    #[arg(long)]
    #[serde(skip)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    #[serde(skip)]
    pub figure: Option<PathBuf>,
}

pub fn figure(a: &FigureArgs) -> Result<Outcome, String> {
    let state = build(a.stages).map_err(err)?;
    let fig = export_figure(&state).map_err(err)?;
    let n = state.points.len();
    let checks = vec![
        Check::new(
            "CSV has one row per point",
            fig.csv.lines().count() == n + 1,
        ),
        Check::new(
            "SVG draws the lines L and L0",
            fig.svg.contains(r#"<line id="L" "#) && fig.svg.contains(r#"<line id="L0" "#),
        ),
        Check::new(
            "SVG marks and labels every point",
            (0..n).all(|i| {
                fig.svg.contains(&format!(r#"<circle id="a{i}" "#))
                    && fig.svg.contains(&format!(">a{i}<"))
            }),
        ),
    ];
    let mut out = Outcome::new(
        &json!({ "stage": state.stage, "csv": fig.csv, "svg": fig.svg }),
        checks,
    )?;
    out.files
        .extend(a.csv.clone().map(|p| (p, fig.csv.clone())));
    out.files
        .extend(a.figure.clone().map(|p| (p, fig.svg.clone())));
    Ok(out)
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ZaksArgs {
    #[arg(long)]
    pub k: usize,
    /// displayed or quotient.
    #[arg(long, default_value = "displayed")]
    pub convention: String,
}

pub fn zaks(a: &ZaksArgs) -> Result<Outcome, String> {
    let conv: ZaksConvention = kebab("convention", &a.convention)?;
    let m = zaks_truncation_with(a.k, conv).map_err(err)?;
    let checks = vec![
        Check::new(
            format!("ambient dimension is {}", 3 + a.k),
            m.dim() == 3 + a.k,
        ),
        Check::new(
            format!("generated group has rank {}", 3 + a.k),
            m.rank() == 3 + a.k,
        ),
    ];
    Outcome::new(&json!({ "convention": conv, "monoid": m }), checks)
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BetaMonoidArgs {
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// prefixes or all-subsets.
    #[arg(long, default_value = "prefixes")]
    pub mode: String,
    /// Quadratic irrational a + b*sqrt2 with b nonzero.
    #[arg(long, default_value = "sqrt2")]
    pub beta: String,
    /// Primes p_n are the least primes above base^n.
    #[arg(long, default_value_t = 5)]
    pub base: u64,
}

pub fn beta_monoid(a: &BetaMonoidArgs) -> Result<Outcome, String> {
    let mode: BetaTupleMode = kebab("mode", &a.mode)?;
    let beta = Beta::try_from(a.beta.clone()).map_err(err)?;
    let family = PuiseuxFamily::SparsePrimes { base: a.base };
    let t = beta_generators(&family, &beta, a.n, mode).map_err(err)?;
    let checks = vec![
        Check::new("every generator is a positive real", t.all_positive()),
        Check::new("generated group has rank 2", t.rank == 2),
    ];
    Outcome::new(&t, checks)
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WitnessArgs {
    /// Denominator chain of a non-cyclic subgroup of Q; without it the lex cone in Z^2 is used.
    #[arg(long)]
    pub chain: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub terms: usize,
    #[arg(long, requires = "chain")]
    pub torsion: Option<String>,
    /// Swap the roles of the two coordinates of the lex cone.
    #[arg(long, conflicts_with = "chain")]
    pub mirror: bool,
}

pub fn witness(a: &WitnessArgs) -> Result<Outcome, String> {
    let w = match &a.chain {
        Some(c) => rank1_witness(&c.parse().map_err(err)?, a.terms, a.torsion.as_deref())?,
        None => WitnessMonoid::LexCone(witness_rank2(a.mirror)),
    };
    let checks = witness_checks(&w);
    Outcome::new(&w, checks)
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SplitArgs {
    /// Rational greater than 1.
    #[arg(long)]
    pub q: String,
}

pub fn split(a: &SplitArgs) -> Result<Outcome, String> {
    let q = parse_rational(&a.q)?;
    let (x, y) = rational_ge1_split(&q).map_err(err)?;
    let one = BigRational::from_integer(1.into());
    let checks = vec![
        Check::new("the factors multiply to q", &x * &y == q),
        Check::new("both factors exceed 1", x > one && y > one),
    ];
    Outcome::new(
        &json!({ "q": q.to_string(), "factors": [x.to_string(), y.to_string()] }),
        checks,
    )
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchArgs {
    #[arg(long)]
    pub f: String,
    #[arg(long)]
    pub p: u64,
    /// Puiseux family for the exponents; without it exponents are natural numbers.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// Maximum number of candidate factors tried.
    #[arg(long, default_value_t = 100_000)]
    pub budget: u64,
}

pub fn search(a: &SearchArgs) -> Result<Outcome, String> {
    let f = AlgebraElem::parse(&a.f, a.p).map_err(err)?;
    let truncation = match &a.family {
        Some(fam) => ExponentTruncation::Puiseux {
            family: parse_family(fam)?,
            n: a.n,
        },
        None => ExponentTruncation::Naturals,
    };
    let r = irreducible_search_bounded(&f, &truncation, a.budget).map_err(err)?;
    let mut checks = Vec::new();
    if let SearchStatus::Factored { g, h, verified } = &r.result {
        checks.push(Check::new("g*h re-multiplies to f", *verified));
        checks.push(Check::new(
            "both factors are nonconstant, hence nonunits",
            !g.is_constant() && !h.is_constant(),
        ));
    }
    Outcome::new(&r, checks)
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NormalFormArgs {
    #[arg(long)]
    pub q: String,
    #[arg(long, default_value_t = 5)]
    pub base: u64,
}

pub fn normal_form(a: &NormalFormArgs) -> Result<Outcome, String> {
    let q = parse_rational(&a.q)?;
    let nf = normal_form_p(&PuiseuxFamily::SparsePrimes { base: a.base }, &q).map_err(err)?;
    let mut checks = Vec::new();
    if let NormalForm::Member { n0, digits, primes } = &nf {
        checks.push(Check::new(
            "n0 + sum n_i/p_i equals q",
            nf.value().as_ref() == Some(&q),
        ));
        checks.push(Check::new(
            "0 <= n_i < p_i and n0 >= 0",
            *n0 >= BigInt::from(0) && digits.iter().all(|(&i, &d)| d < primes[i - 1]),
        ));
    }
    Outcome::new(&json!({ "q": q.to_string(), "normalForm": nf }), checks)
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyArgs {
    /// Certificate produced by an earlier run.
    #[arg(long)]
    pub input: PathBuf,
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome, String> {
    let text = fs::read_to_string(&a.input)
        .map_err(|e| format!("cannot read {}: {e}", a.input.display()))?;
    let original: CertificateEnvelope = parse_json("certificate", &text)?;
    let cmd = original.recorded_command()?;
    if original.command == "verify" {
        return Err("a verify document cannot itself be verified".into());
    }
    let (rerun, _) = execute(&cmd)?;
    let checks = vec![
        Check::new("document round-trips through the serializer", {
            let again: Result<CertificateEnvelope, _> =
                serde_json::from_str(&super::render(&original));
            again.is_ok_and(|e| e == original)
        }),
        Check::new(
            "recorded version matches this build",
            original.version == super::VERSION,
        ),
        Check::new(
            "re-run reproduces the result",
            rerun.result == original.result,
        ),
        Check::new(
            "re-run reproduces the verification summary",
            rerun.verification == original.verification,
        ),
        Check::new("every recorded check passed", original.passed()),
    ];
    Outcome::new(
        &json!({
            "command": original.command,
            "checksRecorded": original.verification.len(),
            "checksRerun": rerun.verification.len(),
        }),
        checks,
    )
}
