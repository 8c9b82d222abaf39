//! Check registry, manifests and run reports.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::affine::{standard_conditions, Direction, SymN};
use crate::c2::{c2_project, compute_grading, jchi_reduce, parse_sg_file, single_term, wnu_reduction_coefficient};
use crate::data::DataSet;
use crate::enveloping::cartan_vars;
use crate::error::{Error, Result};
use crate::lie::{symbolic_multiple, Gen, SlN, Weight};
use crate::scalar::{int, parse_rational, rat, var_set, Poly, Rational};
use crate::singular::{self, SingularityReport, Verdict};
use crate::tensor::{self, Label};
use crate::text::parse_poly;
use crate::walg;
use crate::weyl;
use crate::zhu::{self, Dominance, P0};

pub const SCHEMA_VERSION: u32 = 1;

pub const MUTATION_COUNT: usize = 20;
pub const MUTATION_SEED: u64 = 0x5eed;

/// Registered check ids with one-line descriptions, in default run order.
pub const CHECKS: [(&str, &str); 27] = [
    ("vacuum-singular", "vacuum vector of V^k(sl(4)) is annihilated by e_i(0) and f_theta(1)"),
    ("vacuum-mutations", "single-coefficient mutations of the vacuum vector break singularity"),
    ("sigma", "the diagram flip fixes the vacuum vector"),
    ("zhu-vprime", "Zhu image of the vacuum vector equals the stored v'"),
    ("zhu-p0", "Harish-Chandra images p1, p2 equal the stored polynomials"),
    ("zhu-families", "p1 and p2 vanish on the 16 weight families"),
    ("zhu-box-scan", "common zeros on the half-integer box lie on the families"),
    ("zhu-factorizations", "factorizations of p2 and p1 + p2 and the Q1 - 4 Q2 identity"),
    ("zhu-dominant", "dominant integral members of the families"),
    ("c2-vacuum", "C2 image of the vacuum vector and its J_chi reduction"),
    ("c2-wnu-omega1", "C2 image of w_nu over n w_1 and its J_chi reduction"),
    ("c2-wnu-omega3", "C2 image of w_nu over n w_3 and its J_chi reduction"),
    ("ope-collapse", "collapse conditions of the subregular W-algebra OPEs"),
    ("ope-generic", "homogeneity of the OPE table and non-vanishing at a generic level"),
    ("wnu-omega1", "w_nu over n w_1 is singular, symbolic and concrete n"),
    ("wnu-omega3", "w_nu over n w_3 is singular, symbolic and concrete n"),
    ("wnu-uniqueness", "degree-2 singular vectors of weight nu form a line"),
    ("degree-table", "degrees Delta(nu) - Delta(mu) of the candidate vectors"),
    ("reduced-weights", "weights of the reduced top vectors and the integrality scan"),
    ("fusion", "tensor decompositions, dimensions and the character oracle"),
    ("weyl-hom", "the Weyl map is a Lie homomorphism on basis pairs"),
    ("weyl-vprime", "the Weyl image of v' vanishes"),
    ("weyl-relations", "the stored relations between Weyl images"),
    ("weyl-ma", "image of u', its action on x^b and the M(a) criterion"),
    ("sl5-u", "the sl(5) vector u is singular exactly at the collapsing level"),
    ("sl5-families", "gl(4) singular vectors in the sl(5) modules"),
    ("sl5-decomposition", "summand weights of the sl(5) decomposition table"),
];

/// One check with optional parameters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSpec {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
}

impl CheckSpec {
    pub fn new(id: &str) -> CheckSpec {
        CheckSpec { id: id.to_string(), ..CheckSpec::default() }
    }

    fn k(&self) -> Result<Option<Rational>> {
        self.k.as_deref().map(parse_rational).transpose()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Md,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckManifest {
    pub checks: Vec<CheckSpec>,
    #[serde(default)]
    pub format: Format,
    #[serde(default = "default_jobs")]
    pub jobs: usize,
}

fn default_jobs() -> usize {
    1
}

impl Default for CheckManifest {
    fn default() -> Self {
        CheckManifest {
            checks: CHECKS.iter().map(|(id, _)| CheckSpec::new(id)).collect(),
            format: Format::Json,
            jobs: default_jobs(),
        }
    }
}

impl CheckManifest {
    pub fn empty() -> Self {
        CheckManifest { checks: Vec::new(), ..CheckManifest::default() }
    }

    pub fn from_json(src: &str) -> Result<Self> {
        let m: CheckManifest = serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))?;
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        for c in &self.checks {
            if !CHECKS.iter().any(|(id, _)| *id == c.id) {
                return Err(Error::UnknownCheck(c.id.clone()));
            }
            c.k()?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualOut {
    pub condition: String,
    pub rendered: String,
    pub zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub pass: bool,
    pub summary: String,
    pub residuals: Vec<ResidualOut>,
    pub constants: BTreeMap<String, String>,
    pub tables: Vec<Table>,
}

impl CheckResult {
    fn new(id: &str) -> CheckResult {
        CheckResult {
            id: id.to_string(),
            pass: false,
            summary: String::new(),
            residuals: Vec::new(),
            constants: BTreeMap::new(),
            tables: Vec::new(),
        }
    }

    fn constant(&mut self, k: &str, v: impl ToString) {
        self.constants.insert(k.to_string(), v.to_string());
    }

    fn table(&mut self, name: &str, columns: &[&str], rows: Vec<Vec<String>>) {
        self.tables.push(Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows,
        });
    }

    fn residuals_from(&mut self, rep: &SingularityReport) {
        self.residuals.extend(rep.residuals.iter().map(|r| ResidualOut {
            condition: r.condition.clone(),
            rendered: r.rendered.clone(),
            zero: r.zero,
        }));
    }

    pub fn table_named(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub checks: Vec<CheckResult>,
    pub data_checksums: BTreeMap<String, String>,
    pub all_pass: bool,
    /// Wall-clock milliseconds per check; the only non-deterministic field.
    pub timings: BTreeMap<String, f64>,
}

impl RunReport {
    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.id.as_str()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with the timing field emptied, for determinism comparisons.
    pub fn deterministic_json(&self) -> String {
        let mut r = self.clone();
        r.timings.clear();
        r.to_json()
    }

    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Runs every check of the manifest on up to `jobs` threads; results keep manifest order.
pub fn run(manifest: &CheckManifest, data: &DataSet) -> Result<RunReport> {
    manifest.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(manifest.jobs.max(1))
        .build()
        .map_err(|e| Error::Usage(e.to_string()))?;
    let results: Vec<(CheckResult, f64)> = pool.install(|| {
        manifest
            .checks
            .par_iter()
            .map(|spec| {
                let t = Instant::now();
                let r = run_check(spec, data).unwrap_or_else(|e| {
                    let mut r = CheckResult::new(&spec.id);
                    r.summary = format!("error: {e}");
                    r
                });
                (r, t.elapsed().as_secs_f64() * 1000.0)
            })
            .collect()
    });
    let mut timings = BTreeMap::new();
    let mut checks = Vec::new();
    for (i, (r, ms)) in results.into_iter().enumerate() {
        timings.insert(format!("{:02}:{}", i, r.id), ms);
        checks.push(r);
    }
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(RunReport {
        schema_version: SCHEMA_VERSION,
        checks,
        data_checksums: data.checksums().clone(),
        all_pass,
        timings,
    })
}

pub fn run_check(spec: &CheckSpec, data: &DataSet) -> Result<CheckResult> {
    let f: fn(&CheckSpec, &DataSet) -> Result<CheckResult> = match spec.id.as_str() {
        "vacuum-singular" => vacuum_singular,
        "vacuum-mutations" => vacuum_mutations,
        "sigma" => sigma,
        "zhu-vprime" => zhu_vprime,
        "zhu-p0" => zhu_p0,
        "zhu-families" => zhu_families,
        "zhu-box-scan" => zhu_box_scan,
        "zhu-factorizations" => zhu_factorizations,
        "zhu-dominant" => zhu_dominant,
        "c2-vacuum" => c2_vacuum,
        "c2-wnu-omega1" => |s, d| c2_wnu(s, d, Direction::First),
        "c2-wnu-omega3" => |s, d| c2_wnu(s, d, Direction::Last),
        "ope-collapse" => ope_collapse,
        "ope-generic" => ope_generic,
        "wnu-omega1" => |s, d| wnu(s, d, Direction::First),
        "wnu-omega3" => |s, d| wnu(s, d, Direction::Last),
        "wnu-uniqueness" => wnu_uniqueness,
        "degree-table" => degree_table,
        "reduced-weights" => reduced_weights,
        "fusion" => fusion,
        "weyl-hom" => weyl_hom,
        "weyl-vprime" => weyl_vprime,
        "weyl-relations" => weyl_relations,
        "weyl-ma" => weyl_ma,
        "sl5-u" => sl5_u,
        "sl5-families" => sl5_families,
        "sl5-decomposition" => sl5_decomposition,
        other => return Err(Error::UnknownCheck(other.to_string())),
    };
    f(spec, data)
}

fn sl4() -> SlN {
    SlN::new(4).expect("sl(4)")
}

fn sl5() -> SlN {
    SlN::new(5).expect("sl(5)")
}

fn n_poly(s: &str) -> Result<Poly> {
    parse_poly(s, &var_set(&["n"]))
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Degenerate => "degenerate",
    }
}

fn fmt_q(v: &[Rational]) -> String {
    format!("({})", v.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(", "))
}

fn fmt_label(v: &[i64]) -> String {
    format!("({})", v.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(", "))
}

fn vacuum_singular(spec: &CheckSpec, data: &DataSet) -> Result<CheckResult> {
    let k = spec.k()?.unwrap_or_else(singular::level);
    let (lv, rep) = singular::verify_vacuum(data.get("singv_vacuum_sl4.vec")?, &k)?;
    let mut r = CheckResult::new(&spec.id);
    r.residuals_from(&rep);
    r.constant("k", &k);
    r.constant("terms", lv.terms.len());
    if let Some(w) = &rep.affine_weight {
        r.constant("affine_weight", w);
    }
    r.pass = rep.pass();
    let zeros = rep.residuals.iter().filter(|x| x.zero).count();
    r.summary = format!("{zeros}/{} residuals vanish at k = {k}", rep.residuals.len());
    Ok(r)
}

fn vacuum_mutations(spec: &CheckSpec, data: &DataSet) -> Result<CheckResult> {
    let sl = sl4();
    let lv = singular::load_vector(&sl, &singular::level(), data.get("singv_vacuum_sl4.vec")?, None)?;
    let muts = singular::mutations(&lv, &standard_conditions(&sl), MUTATION_COUNT, MUTATION_SEED)?;
    let mut r = CheckResult::new(&spec.id);
    let failing = muts.iter().filter(|m| m.verdict == Verdict::Fail).count();
    r.pass = failing == muts.len();
    r.constant("seed", MUTATION_SEED);
    r.summary = format!("{failing}/{} mutated vectors fail the singularity test", muts.len());
    let rows = muts
        .iter()
        .map(|m| vec![m.term.to_string(), m.from.clone(), m.to.clone(), verdict_str(m.verdict).into()])
        .collect();
    r.table("mutations", &["term", "printed", "mutated", "verdict"], rows);
    Ok(r)
}

fn sigma(spec: &CheckSpec, data: &DataSet) -> Result<CheckResult> {
    let lv = singular::load_vector(&sl4(), &singular::level(), data.get("singv_vacuum_sl4.vec")?, None)?;
    let fixed = singular::sigma_check(&lv.module, &lv.vector)?;
    let mut r = CheckResult::new(&spec.id);
    r.pass = fixed;
    r.summary = if fixed { "sigma(v) = v".into() } else { "sigma(v) != v".into() };
    Ok(r)
}

fn load_p0(data: &DataSet) -> Result<(P0, BTreeMap<String, Poly>)> {
    let sl = sl4();
    let vp = zhu::parse_u_element(&sl, data.get("vprime_sl4.ug")?)?;
    let p0 = zhu::extract_p0(&sl, &vp)?;
    let named = zhu::parse_named_polys(data.get("p0_sl4.poly")?, &cartan_vars(&sl))?;
    Ok((p0, named))
}

fn printed_p0(p0: &P0, named: &BTreeMap<String, Poly>) -> Result<P0> {
    let get = |k: &str| named.get(k).cloned().ok_or_else(|| Error::Parse(format!("missing {k}")));
    Ok(P0 { p1: get("p1")?, p2: get("p2")?, ..p0.clone() })
}

fn zhu_vprime(spec: &CheckSpec, data: &DataSet) -> Result<CheckResult> {
    let sl = sl4();
    let lv = singular::load_vector(&sl, &singular::level(), data.get("singv_vacuum_sl4.vec")?, None)?;
    let image = zhu::zhu_project(&lv.module, &lv.vector)?;
    let stored = zhu::parse_u_element(&sl, data.get("vprime_sl4.ug")?)?;
    let mut r = CheckResult::new(&spec.id);
    r.pass = image == stored;
    r.constant("terms", image.len());
    r.summary = format!(
        "Zhu image has {} PBW terms; {} the stored v'",
        image.len(),
        if r.pass { "equal to" } else { "different from" }
    );
    Ok(r)
}

fn zhu_p0(spec: &CheckSpec, data: &DataSet) -> Result<CheckResult> {
    let (p0, named) = load_p0(data)?;
    let printed = printed_p0(&p0, &named)?;
    let mut r = CheckResult::new(&spec.id);
    r.constant("submodule_dim", p0.submodule_dim);
    r.constant("zero_weight_dim", p0.zero_weight_dim);
    r.constant("p1", &p0.p1);
    r.constant("p2", &p0.p2);
    r.constant("p1_terms", p0.p1.len());
    r.constant("p2_terms", p0.p2.len());
    r.constant("independent", zhu::independent(&p0.p1, &p0.p2));
    let neg = |p: &Poly| p.scale(&int(-1));
    let eq = p0.p1 == printed.p1 && p0.p2 == printed.p2;
    let negated = p0.p1 == neg(&printed.p1) && p0.p2 == neg(&printed.p2);
    let relation = if eq {
        "computed = stored"
    } else if negated {
        "computed = -stored"
    } else {
        "unrelated"
    };
    r.constant("relation", relation);
    r.pass = eq;
    r.summary = format!(
        "R has dimension {} with a {}-dimensional zero-weight space; p1, p2: {relation}",
        p0.submodule_dim, p0.zero_weight_dim
    );
    Ok(r)
}

fn families(data: &DataSet) -> Result<Vec<zhu::WeightFamily>> {
    zhu::parse_families(data.get("families_sl4.txt")?)
}

fn fmt_family(f: &zhu::WeightFamily) -> String {
    format!("({})", f.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "))
}

fn zhu_families(spec: &CheckSpec, data: &DataSet) -> Result<CheckResult> {
    let (p0, named) = load_p0(data)?;
    let printed = printed_p0(&p0, &named)?;
    let fams = families(data)?;
    let computed = zhu::verify_families(&p0, &fams)?;
    let stored = zhu::verify_families(&printed, &fams)?;
    let mut r = CheckResult::new(&spec.id);
    let ok = computed.iter().filter(|v| v.pass()).count();
    r.pass = fams.len() == 16 && ok == fams.len();
    r.constant("stored_polynomials_vanish", stored.iter().all(|v| v.pass()));
    r.summary = format!("p1 = p2 = 0 identically in t on {ok}/{} families", fams.len());
    let rows = fams
        .iter()
        .zip(&computed)
        .map(|(f, v)| vec![f.id.to_string(), fmt_family(f), v.p1.to_string(), v.p2.to_string()])
        .collect();
    r.table("families", &["i", "mu_i(t)", "p1(mu_i(t))", "p2(mu_i(t))"], rows);
    Ok(r)
}

fn zhu_box_scan(spec: &CheckSpec, data: &DataSet) -> Result<CheckResult> {
    let (p0, _) = load_p0(data)?;
    let scan = zhu::box_scan(&p0, &families(data)?, 4)?;
    let mut r = CheckResult::new(&spec.id);
    r.pass = scan.pass();
    r.constant("points", scan.points);
    r.constant("zeros", scan.zeros);
    r.constant("off_line", scan.off_line.len());
    r.constant("missed", scan.missed.len());
    r.summary = format!(
        "{} of {} half-integer points in [-4, 4]^3 are common zeros; {} off the families, {} family points missed",
        scan.zeros,
        scan.points,
        scan.off_line.len(),
        scan.missed.len()
    );
    Ok(r)
}

fn zhu_factorizations(spec: &CheckSpec, data: &DataSet) -> Result<CheckResult> {
    let (p0, named) = load_p0(data)?;
    let fz = zhu::verify_factorizations(&p0, &named)?;
    let fs = zhu::verify_factorizations(&printed_p0(&p0, &named)?, &named)?;
    let show = |c: &Option<Rational>| c.as_ref().map_or("none".to_string(), |q| q.to_string());
    let mut r = CheckResult::new(&spec.id);
    r.pass = fz.pass();
    r.constant("c", show(&fz.c));
    r.constant("c_prime", show(&fz.c_prime));
    r.constant("c_stored", show(&fs.c));
    r.constant("c_prime_stored", show(&fs.c_prime));
    r.constant("q_identity", fz.q_identity);
    r.summary = format!(
        "c p2 = H2 (H1+H2+H3+5/2) Q2 with c = {}; c' (p1+p2) = H1 H3 Q1 with c' = {}; Q1 - 4 Q2 identity {}",
        show(&fz.c),
        show(&fz.c_prime),
        if fz.q_identity { "holds" } else { "fails" }
    );
    Ok(r)
}

fn zhu_dominant(spec: &CheckSpec, data: &DataSet) -> Result<CheckResult> {
    let fams = families(data)?;
    let mut rows = Vec::new();
    let mut onward = Vec::new();
    let mut finite_nonempty = Vec::new();
    for f in &fams {
        let d = zhu::dominant_integral(f)?;
        let text = match &d {
            Dominance::FromOnward(s) => {
                onward.push((f.id, s.clone()));
                format!("t in Z, t >= {s}")
            }
            Dominance::Finite { values, certificate } => {
                if !values.is_empty() {
                    finite_nonempty.push(f.id);
                }
                format!("{} ({certificate})", fmt_q(values))
            }
        };
        rows.push(vec![f.id.to_string(), fmt_family(f), text]);
    }
    let mut r = CheckResult::new(&spec.id);
    r.pass = onward == vec![(1, int(0)), (2, int(0))] && finite_nonempty.is_empty();
    r.summary = format!(
        "dominant integral members only in families {:?}",
        onward.iter().map(|(i, _)| *i).collect::<Vec<_>>()
    );
    r.table("dominance", &["i", "mu_i(t)", "dominant integral"], rows);
    Ok(r)
}

fn c2_vacuum(spec: &CheckSpec, data: &DataSet) -> Result<CheckResult> {
    let sl = sl4();
    let lv = singular::load_vector(&sl, &singular::level(), data.get("singv_vacuum_sl4.vec")?, None)?;
    let image = c2_project(&lv.vector)?;
    let stored = parse_sg_file(&lv.module, data.get("vdprime_sl4.sg")?)?;
    let chi = compute_grading(&sl)?;
    let red = jchi_reduce(&chi, &image);
    let mut r = CheckResult::new(&spec.id);
    let expect = (vec![Gen::e(1, 2)], lv.module.highest_key(), Poly::scalar(int(2)));
    r.pass = image == stored && single_term(&red) == Some(expect);
    r.constant("terms", image.len());
    r.constant("reduction", &red);
    r.summary = format!(
        "C2 image {} the stored v'' ({} terms); reduction mod J_chi: {red}",
        if image == stored { "equals" } else { "differs from" },
        image.len()
    );
    Ok(r)
}

fn wnu_files(dir: Direction) -> (&'static str, &'static str) {
    match dir {
        Direction::First => ("wnu_omega1.vec", "wnu_omega1.sg"),
        Direction::Last => ("wnu_omega3.vec", "wnu_omega3.sg"),
    }
}

fn c2_wnu(spec: &CheckSpec, data: &DataSet, dir: Direction) -> Result<CheckResult> {
    let sl = sl4();
    let (vf, sf) = wnu_files(dir);
    let lv = singular::load_vector(&sl, &singular::level(), data.get(vf)?, Some(SymN::Symbolic))?;
    let image = c2_project(&lv.vector)?;
    let stored = parse_sg_file(&lv.module, data.get(sf)?)?;
    let red = jchi_reduce(&compute_grading(&sl)?, &image);
    let symbols = match dir {
        Direction::First => vec![],
        Direction::Last => vec![Gen::e(1, 2)],
    };
    let expect = (symbols, lv.module.highest_key(), wnu_reduction_coefficient()?);
    let mut r = CheckResult::new(&spec.id);
    r.pass = image == stored && single_term(&red) == Some(expect);
    r.constant("terms", image.len());
    r.constant("reduction", &red);
    r.summary = format!(
        "C2 image {} the stored file ({} terms); reduction mod J_chi: {red}",
        if image == stored { "equals" } else { "differs from" },
        image.len()
    );
    Ok(r)
}

fn ope_table(data: &DataSet) -> Result<walg::OpeTable> {
    walg::load_table(data.get("ope_subreg_sl4.toml")?)
}

fn collapse_constants(r: &mut CheckResult, c: &walg::CollapseReport) {
    r.constant("k", &c.k);
    r.constant("pole4", &c.pole4);
    r.constant("pole3", &c.pole3);
    r.constant("pole2_L", &c.pole2[0]);
    r.constant("pole2_JJ", &c.pole2[1]);
    r.constant("pole2_dJ", &c.pole2[2]);
    r.constant("pole2_scalar", c.pole2_scalar.as_ref().map_or("none".into(), |s| s.to_string()));
    r.constant("central", &c.central);
    r.constant("central_charge", &c.central_charge);
    r.constant("ww_leading", &c.ww_leading);
    let pole1: Vec<String> = c.pole1.iter().map(|(w, q)| format!("{q} {w}")).collect();
    r.constant("pole1", pole1.join(" + "));
}

fn ope_collapse(spec: &CheckSpec, data: &DataSet) -> Result<CheckResult> {
    let k = spec.k()?.unwrap_or_else(singular::level);
    let c = walg::collapse_check(&ope_table(data)?, &k)?;
    let mut r = CheckResult::new(&spec.id);
    collapse_constants(&mut r, &c);
    r.pass = c.collapses();
    r.summary = format!(
        "at k = {k}: pole 4 {}, pole 3 {}, pole 2 = {} (L - 4:JJ:), L L central term {}, W W leading term {}",
        c.pole4,
        c.pole3,
        c.pole2_scalar.as_ref().map_or("not proportional to".into(), |s| s.to_string()),
        c.central,
        c.ww_leading
    );
    Ok(r)
}

fn ope_generic(spec: &CheckSpec, data: &DataSet) -> Result<CheckResult> {
    let k = spec.k()?.unwrap_or_else(|| int(0));
    let t = ope_table(data)?;
    let viol = t.weight_violations()?;
    let c = walg::collapse_check(&t, &k)?;
    let mut r = CheckResult::new(&spec.id);
    collapse_constants(&mut r, &c);
    r.constant("entries", t.len());
    r.constant("weight_violations", viol.len());
    r.pass = viol.is_empty() && c.none_vanish();
    r.summary = format!(
        "{} OPE entries, {} weight violations; at k = {k} {} of the collapse conditions hold",
        t.len(),
        viol.len(),
        if c.none_vanish() { "none" } else { "some" }
    );
    Ok(r)
}

fn wnu(spec: &CheckSpec, data: &DataSet, dir: Direction) -> Result<CheckResult> {
    let n_max = spec.n_max.unwrap_or(6);
    let (vf, _) = wnu_files(dir);
    let src = data.get(vf)?;
    let mut r = CheckResult::new(&spec.id);
    let mut rows = Vec::new();
    let mut ok = true;
    let (lv, rep) = singular::verify_wnu(src, dir, SymN::Symbolic)?;
    r.residuals_from(&rep);
    let (deg, wt) = lv.module.degree_and_weight(&lv.vector)?;
    let nu = singular::wnu_weight(dir, &n_poly("n")?)?;
    let book = deg == int(2) && wt == nu;
    ok &= rep.pass() && book;
    r.constant("degree", &deg);
    r.constant("weight", &wt);
    rows.push(vec!["n".into(), verdict_str(rep.verdict).into(), deg.to_string(), wt.to_string()]);
    for n in 0..=n_max {
        let (lv, rep) = singular::verify_wnu(src, dir, SymN::Concrete(n))?;
        let (deg, wt) = lv.module.degree_and_weight(&lv.vector)?;
        let nu = singular::wnu_weight(dir, &Poly::scalar(int(i64::from(n))))?;
        // n = 0 gives the zero vector, which carries no statement.
        if n > 0 {
            ok &= rep.pass() && deg == int(2) && wt == nu;
        }
        rows.push(vec![n.to_string(), verdict_str(rep.verdict).into(), deg.to_string(), wt.to_string()]);
    }
    r.pass = ok;
    r.summary = format!("symbolic n: {}; n = 1..{n_max}: see table; (degree, weight) = (2, {nu})", verdict_str(rep.verdict));
    r.table("cases", &["n", "verdict", "degree", "weight"], rows);
    Ok(r)
}

fn wnu_uniqueness(spec: &CheckSpec, _data: &DataSet) -> Result<CheckResult> {
    let n_max = spec.n_max.unwrap_or(3);
    let mut r = CheckResult::new(&spec.id);
    let mut rows = Vec::new();
    let mut ok = true;
    for (name, dir) in [("w1", Direction::First), ("w3", Direction::Last)] {
        for n in 1..=n_max {
            let (size, dim) = singular::degree2_solution_dim(dir, n)?;
            ok &= dim == 1;
            rows.push(vec![name.into(), n.to_string(), size.to_string(), dim.to_string()]);
        }
    }
    r.pass = ok;
    r.summary = format!("solution space of the degree-2 system has dimension 1 for n = 1..{n_max}: {ok}");
    r.table("systems", &["top", "n", "unknowns", "solution dim"], rows);
    Ok(r)
}

/// (mu, nu, expected degree) for the three candidates over n w_1 and over n w_3.
fn degree_rows() -> Result<Vec<(String, Weight, Weight, Poly)>> {
    let n = n_poly("n")?;
    let c = |q: i64| Poly::scalar(int(q));
    let sub = |q: i64| n.try_sub(&c(q));
    let w = |a: Poly, b: Poly, d: Poly| Weight(vec![a, b, d]);
    let sl = sl4();
    let m1 = symbolic_multiple(&sl, 1, "n");
    let m3 = symbolic_multiple(&sl, 3, "n");
    Ok(vec![
        ("n w1 + 2 w2".into(), m1.clone(), w(n.clone(), c(2), c(0)), n_poly("4 + 2*n/3")?),
        ("(n-1) w1 + w2 + w3".into(), m1.clone(), w(sub(1)?, c(1), c(1)), n_poly("2")?),
        ("(n-2) w1 + 2 w3".into(), m1, w(sub(2)?, c(0), c(2)), n_poly("2*(2-n)/3")?),
        ("2 w2 + n w3".into(), m3.clone(), w(c(0), c(2), n.clone()), n_poly("4 + 2*n/3")?),
        ("w1 + w2 + (n-1) w3".into(), m3.clone(), w(c(1), c(1), sub(1)?), n_poly("2")?),
        ("2 w1 + (n-2) w3".into(), m3, w(c(2), c(0), sub(2)?), n_poly("2*(2-n)/3")?),
    ])
}

fn degree_table(spec: &CheckSpec, _data: &DataSet) -> Result<CheckResult> {
    let sl = sl4();
    let k = singular::level();
    let mut r = CheckResult::new(&spec.id);
    let mut rows = Vec::new();
    let mut ok = true;
    for (name, mu, nu, expect) in degree_rows()? {
        let d = tensor::singular_degree(&sl, &mu, &nu, &k)?;
        ok &= d == expect;
        rows.push(vec![mu.to_string(), name, d.to_string(), expect.to_string()]);
    }
    r.pass = ok;
    r.summary = "Delta(nu) - Delta(mu) at k = -5/2 for the three candidate weights".into();
    r.table("degrees", &["mu", "nu", "degree", "expected"], rows);
    Ok(r)
}

fn reduced_weights(spec: &CheckSpec, _data: &DataSet) -> Result<CheckResult> {
    let sl = sl4();
    let k = singular::level();
    let n_max = spec.n_max.unwrap_or(6);
    let mut r = CheckResult::new(&spec.id);
    let mut ok = true;
    for (i, name, expect) in [(1, "w1", "n*(n+1)/4"), (3, "w3", "n*(n-1)/4")] {
        let mu = symbolic_multiple(&sl, i, "n");
        let (dw, j0) = walg::hf_top_data(&sl, &mu, &k)?;
        let form = sl.weight_form(&mu, &sl.fundamental(1))?;
        ok &= dw == n_poly(expect)? && j0 == form;
        r.constant(&format!("delta_w_{name}"), &dw);
        r.constant(&format!("j0_{name}"), &j0);
        let scan = walg::integrality_scan(&sl, i, n_max, &k)?;
        let rows = scan
            .rows
            .iter()
            .map(|x| vec![x.n.to_string(), x.delta_w.to_string(), x.delta_k.to_string()])
            .collect();
        r.table(&format!("scan_{name}"), &["n", "Delta_W", "Delta_k"], rows);
        r.constant(&format!("vacuum_weight_{name}"), format!("{:?}", scan.vacuum_weight));
        r.constant(&format!("integral_{name}"), format!("{:?}", scan.integral));
        let ex: Vec<String> = scan.excluded.iter().map(|(n, q)| format!("n={n}: Delta_k = {q}")).collect();
        r.constant(&format!("excluded_{name}"), ex.join("; "));
        match i {
            1 => ok &= scan.vacuum_weight == vec![0] && scan.excluded.is_empty(),
            _ => ok &= scan.vacuum_weight == vec![0, 1] && scan.excluded == vec![(1, rat(5, 4))],
        }
    }
    r.pass = ok;
    r.summary = "Delta_W(n w1) = n(n+1)/4, Delta_W(n w3) = n(n-1)/4, J0 = (mu|w1); (w3, n=1) excluded by Delta_k = 5/4".into();
    Ok(r)
}

fn expected_fusion(dir: Direction, n: i64) -> Vec<Label> {
    let mut v = vec![vec![n, 2, 0], vec![n - 1, 1, 1], vec![n - 2, 0, 2]];
    v.retain(|l| tensor::is_dominant(l));
    if dir == Direction::Last {
        for l in &mut v {
            l.reverse();
        }
    }
    v.sort();
    v
}

fn fusion(spec: &CheckSpec, _data: &DataSet) -> Result<CheckResult> {
    let sl = sl4();
    let n_max = spec.n_max.unwrap_or(8);
    let mut r = CheckResult::new(&spec.id);
    let mut rows = Vec::new();
    let mut ok = true;
    for dir in [Direction::First, Direction::Last] {
        for n in 1..=i64::from(n_max) {
            let m: Label = match dir {
                Direction::First => vec![n, 0, 0],
                Direction::Last => vec![0, 0, n],
            };
            let d = tensor::tensor_decompose(&sl, &[0, 2, 0], &m)?;
            let dim = tensor::decomposition_dim(&sl, &d)?;
            let prod = 20 * tensor::weyl_dim(&sl, &m)?;
            let labels: Vec<Label> = d.keys().cloned().collect();
            let good = dim == prod && d.values().all(|&x| x == 1) && labels == expected_fusion(dir, n);
            ok &= good;
            let text: Vec<String> = d.iter().map(|(l, k)| format!("{}:{k}", fmt_label(l))).collect();
            rows.push(vec![fmt_label(&m), text.join(" + "), format!("{dim} = {prod}"), good.to_string()]);
        }
    }
    r.table("V(2 w2) x V(mu)", &["mu", "decomposition", "dimension", "expected"], rows);
    let mut mult_ok = true;
    for i in 0..=5 {
        for j in 0..=5 {
            let d = tensor::tensor_decompose(&sl, &[i, 0, 0], &[j, 0, 0])?;
            mult_ok &= d.get(&vec![i + j, 0, 0]) == Some(&1);
        }
    }
    r.constant("top_multiplicity_one", mult_ok);
    let (pairs, disagree) = oracle_agreement(&sl, 300)?;
    r.constant("oracle_pairs", pairs);
    r.constant("oracle_disagreements", disagree.len());
    r.pass = ok && mult_ok && disagree.is_empty();
    r.summary = format!(
        "V(2w2) x V(n w1), V(2w2) x V(n w3) for n = 1..{n_max}; V((i+j)w1) once in V(iw1) x V(jw1); character oracle agrees on {} of {pairs} pairs",
        pairs - disagree.len()
    );
    Ok(r)
}

/// Klimyk against the Gelfand-Tsetlin character product for all pairs of dimension <= max_dim.
pub fn oracle_agreement(sl: &SlN, max_dim: u64) -> Result<(usize, Vec<(Label, Label)>)> {
    let labels = tensor::labels_up_to_dim(sl, max_dim)?;
    let mult: Vec<tensor::Multiplicities> =
        labels.iter().map(|l| tensor::freudenthal(sl, l)).collect::<Result<_>>()?;
    let chars: Vec<tensor::Character> =
        labels.iter().map(|l| tensor::gt_character(sl, l)).collect::<Result<_>>()?;
    let bad: Vec<Vec<(Label, Label)>> = (0..labels.len())
        .into_par_iter()
        .map(|i| {
            let mut cache = HashMap::new();
            let mut bad = Vec::new();
            for j in 0..labels.len() {
                let k = tensor::tensor_decompose_with(sl, &labels[i], &mult[j]);
                let o = tensor::strip_decompose(sl, &tensor::dominant_product(&chars[i], &chars[j]), &mut cache);
                match (k, o) {
                    (Ok(a), Ok(b)) if a == b => {}
                    _ => bad.push((labels[i].clone(), labels[j].clone())),
                }
            }
            bad
        })
        .collect();
    Ok((labels.len() * labels.len(), bad.into_iter().flatten().collect()))
}

fn weyl_hom(spec: &CheckSpec, _data: &DataSet) -> Result<CheckResult> {
    let ranks: Vec<usize> = match spec.rank {
        Some(n @ (4 | 5)) => vec![n],
        Some(n) => return Err(Error::Usage(format!("rank {n}: expected 4 or 5"))),
        None => vec![4, 5],
    };
    let mut r = CheckResult::new(&spec.id);
    let mut ok = true;
    let mut parts = Vec::new();
    for n in ranks {
        let sl = SlN::new(n)?;
        let defects = weyl::homomorphism_defects(&sl);
        let pairs = sl.basis().len().pow(2);
        ok &= defects.is_empty();
        r.constant(&format!("sl{n}_pairs"), pairs);
        r.constant(&format!("sl{n}_defects"), defects.len());
        parts.push(format!("sl({n}): {} of {pairs} pairs", pairs - defects.len()));
    }
    r.pass = ok;
    r.summary = format!("phi([a,b]) = [phi(a), phi(b)] on {}", parts.join(", "));
    Ok(r)
}

fn weyl_vprime(spec: &CheckSpec, data: &DataSet) -> Result<CheckResult> {
    let sl = sl4();
    let vp = zhu::parse_u_element(&sl, data.get("vprime_sl4.ug")?)?;
    let img = weyl::phi(&sl, &vp)?;
    let mut r = CheckResult::new(&spec.id);
    r.pass = img.is_zero();
    r.constant("image", &img);
    r.summary = format!("phi(v') = {img}");
    Ok(r)
}

/// Relation ids whose stored form is expected to fail.
const EXPECTED_FAILING_RELATIONS: [&str; 1] = ["12-as-printed"];

fn weyl_relations(spec: &CheckSpec, data: &DataSet) -> Result<CheckResult> {
    let checks = weyl::check_relations(&sl4(), data.get("weyl_relations_sl4.txt")?)?;
    let mut r = CheckResult::new(&spec.id);
    let mut ok = true;
    let mut rows = Vec::new();
    for c in &checks {
        let expect = !EXPECTED_FAILING_RELATIONS.contains(&c.id.as_str());
        ok &= c.holds == expect;
        rows.push(vec![c.id.clone(), c.holds.to_string(), expect.to_string(), c.lhs.to_string()]);
    }
    let holding = checks.iter().filter(|c| c.holds).count();
    r.pass = ok && holding == 24;
    r.summary = format!("{holding} relations hold; as-printed variants fail: {ok}");
    r.table("relations", &["id", "holds", "expected", "lhs"], rows);
    Ok(r)
}

fn weyl_ma(spec: &CheckSpec, data: &DataSet) -> Result<CheckResult> {
    let sl = sl5();
    let up = zhu::parse_u_element(&sl, data.get("uprime_sl5.ug")?)?;
    let img = weyl::phi(&sl, &up)?;
    let op_ok = img == weyl::uprime_operator();
    let act = weyl::act_symbolic(&img, &weyl::SymbolicMonomial { offset: vec![0; 5] })?;
    let act_ok = act == weyl::expected_uprime_action()?;
    let mut r = CheckResult::new(&spec.id);
    r.constant("phi_uprime", &img);
    for (m, c) in &act {
        r.constant("action", format!("({c}) x^(b + {:?})", m.offset));
    }
    let h = rat(-5, 2);
    let samples: Vec<Vec<Rational>> = vec![
        vec![int(0), int(0), int(0), int(0), h.clone()],
        vec![int(1), int(0), int(0), int(0), &h - int(1)],
        vec![rat(7, 3), int(0), int(0), int(0), &h - rat(7, 3)],
        vec![rat(-3, 2), int(0), int(0), int(0), &h + rat(3, 2)],
        vec![rat(-1, 2); 5],
        vec![int(0); 5],
        vec![int(1), int(2), int(3), int(4), int(5)],
        vec![h.clone(), int(0), int(0), int(0), int(0)],
        vec![rat(1, 3), rat(-1, 2), int(0), int(0), int(-2)],
    ];
    let mut ok = op_ok && act_ok;
    let mut rows = Vec::new();
    for a in &samples {
        let m = weyl::ma_criterion(a)?;
        let expect = m.sum == h;
        let witness_ok = match &m.witness {
            None => m.holds,
            Some((b, c)) => !m.holds && !c.is_zero() && b.iter().cloned().sum::<Rational>() == m.sum,
        };
        ok &= m.holds == expect && witness_ok;
        let w = m.witness.as_ref().map_or("none".to_string(), |(b, c)| format!("b = {} gives {c}", fmt_q(b)));
        rows.push(vec![fmt_q(a), m.sum.to_string(), m.holds.to_string(), w]);
    }
    r.pass = ok;
    r.summary = format!(
        "phi(u') {} (3/5) x1 d5 (sum x_i d_i + 5/2); action on x^b {} (3/5) b5 (sum b_i + 5/2) x^(b + e1 - e5)",
        if op_ok { "=" } else { "!=" },
        if act_ok { "=" } else { "!=" }
    );
    r.table("M(a)", &["a", "sum", "module", "witness"], rows);
    Ok(r)
}

fn sl5_u(spec: &CheckSpec, data: &DataSet) -> Result<CheckResult> {
    let src = data.get("u_sl5.vec")?;
    let mut r = CheckResult::new(&spec.id);
    match spec.k()? {
        Some(k) => {
            let (_, rep) = singular::verify_sl5_u(src, &k)?;
            r.residuals_from(&rep);
            r.pass = rep.pass();
            r.summary = format!("u at k = {k}: {}", verdict_str(rep.verdict));
        }
        None => {
            let (_, at) = singular::verify_sl5_u(src, &singular::level())?;
            let (_, off) = singular::verify_sl5_u(src, &int(0))?;
            r.residuals_from(&at);
            if let Some(w) = &at.affine_weight {
                r.constant("affine_weight", w);
            }
            r.constant("verdict_k0", verdict_str(off.verdict));
            r.pass = at.pass() && off.verdict == Verdict::Fail;
            r.summary = format!(
                "u at k = -5/2: {}; at k = 0: {}",
                verdict_str(at.verdict),
                verdict_str(off.verdict)
            );
        }
    }
    Ok(r)
}

fn sl5_cases(data: &DataSet, n_max: u32) -> Result<(Vec<singular::Sl5Row>, Vec<singular::FamilyCase>)> {
    let rows = singular::parse_sl5_table(data.get("sl5_decomposition.txt")?)?;
    let mut jobs = Vec::new();
    for row in &rows {
        for con in singular::constructions(row)? {
            for n in 0..=n_max {
                jobs.push((row, con, n));
            }
        }
    }
    let cases = jobs
        .into_par_iter()
        .map(|(row, con, n)| singular::verify_sl5_family(row, con, n))
        .collect::<Result<Vec<_>>>()?;
    Ok((rows, cases))
}

fn sl5_families(spec: &CheckSpec, data: &DataSet) -> Result<CheckResult> {
    let n_max = spec.n_max.unwrap_or(6);
    let (rows, cases) = sl5_cases(data, n_max)?;
    let mut r = CheckResult::new(&spec.id);
    let ok = cases.iter().filter(|c| c.report.pass()).count();
    r.pass = ok == cases.len();
    r.constant("cases", cases.len());
    r.constant("tabulated_rows", format!("{:?}", singular::tabulated_rows(&rows)));
    r.summary = format!("{ok}/{} gl(4) singular-vector cases pass for n = 0..{n_max}", cases.len());
    let mut table = Vec::new();
    for row in &rows {
        let cons: Vec<String> = singular::constructions(row)?.iter().map(|c| c.describe()).collect();
        let all = cases.iter().filter(|c| c.row == row.index).all(|c| c.report.pass());
        table.push(vec![
            row.index.to_string(),
            fmt_q(&row.weight),
            singular::alpha0_label(&row.weight).to_string(),
            cons.join("; "),
            all.to_string(),
        ]);
    }
    r.table("lambda", &["i", "lambda_i", "lambda(alpha_0)", "vectors", "pass"], table);
    Ok(r)
}

fn sl5_decomposition(spec: &CheckSpec, data: &DataSet) -> Result<CheckResult> {
    let n_max = spec.n_max.unwrap_or(6);
    let (rows, cases) = sl5_cases(data, n_max)?;
    let fams = families(data)?;
    let checks = singular::verify_decomposition(&rows, &fams, &cases, n_max)?;
    let mut r = CheckResult::new(&spec.id);
    let ok = checks.iter().filter(|c| c.pass()).count();
    r.pass = ok == checks.len() && !checks.is_empty();
    r.constant("summands", checks.len());
    r.summary = format!(
        "{ok}/{} summand weights lie on their family and match a verified singular vector (n <= {n_max})",
        checks.len()
    );
    let mut table = Vec::new();
    for row in &rows {
        let series: Vec<String> = row
            .series
            .iter()
            .map(|s| format!("mu{}({}) c={}", s.family, s.t, s.c))
            .collect();
        let all = checks.iter().filter(|c| c.row == row.index).all(|c| c.pass());
        table.push(vec![row.index.to_string(), fmt_q(&row.weight), series[0].clone(), series[1].clone(), all.to_string()]);
    }
    r.table("decomposition", &["i", "lambda_i", "series 1 (n >= 0)", "series 2 (n >= 1)", "pass"], table);
    Ok(r)
}

fn md_escape(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', "<br>")
}

pub fn render(report: &RunReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Md => render_md(report),
    }
}

fn render_md(report: &RunReport) -> String {
    let mut out = String::new();
    let passed = report.checks.iter().filter(|c| c.pass).count();
    out.push_str("# Verification report\n\n");
    out.push_str(&format!("{passed}/{} checks pass.\n\n", report.checks.len()));
    out.push_str("| check | result | summary |\n|---|---|---|\n");
    for c in &report.checks {
        let v = if c.pass { "PASS" } else { "FAIL" };
        out.push_str(&format!("| {} | {v} | {} |\n", c.id, md_escape(&c.summary)));
    }
    for c in &report.checks {
        out.push_str(&format!("\n## {}: {}\n\n{}\n", c.id, if c.pass { "PASS" } else { "FAIL" }, c.summary));
        if !c.residuals.is_empty() {
            out.push('\n');
            for x in &c.residuals {
                out.push_str(&format!("- {} v = {}\n", x.condition, md_escape(&x.rendered)));
            }
        }
        if !c.constants.is_empty() {
            out.push('\n');
            for (k, v) in &c.constants {
                out.push_str(&format!("- {k}: {}\n", md_escape(v)));
            }
        }
        for t in &c.tables {
            out.push_str(&format!("\n### {}\n\n| {} |\n|{}\n", t.name, t.columns.join(" | "), "---|".repeat(t.columns.len())));
            for row in &t.rows {
                let cells: Vec<String> = row.iter().map(|s| md_escape(s)).collect();
                out.push_str(&format!("| {} |\n", cells.join(" | ")));
            }
        }
    }
    out.push_str("\n## Data checksums\n\n");
    for (n, h) in &report.data_checksums {
        out.push_str(&format!("- `{n}`: `{h}`\n"));
    }
    out
}
