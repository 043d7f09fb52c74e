//! Job front-end: parse a [`JobSpec`], dispatch, and render a text or JSON
//! report with an exit code (0 success, 2 invalid input, 3 unsupported
//! class/mode).

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::analysis::{analyze, enumerate_regular_systems, PfaffReport, RegularEnumeration, SingularLocus};
use crate::error::{Error, Result};
use crate::json::{CharacterJson, ClassJson, GeneralJson, KFormJson, SectionsJson, SolutionJson, SpectrumJson};
use crate::sections::{
    brute_force_kernel, general_section, solve_sections, sufficient_degree, SectionBasis, SectionProblem,
};
use crate::spectrum::{block_degree, classify, compute_relation_lattice, Character, HopfClass, Spectrum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Classify,
    Sections,
    Basis,
    General,
    Analyze,
    EnumerateRegular,
    Oracle,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Sections => "sections",
            Command::Basis => "basis",
            Command::General => "general",
            Command::Analyze => "analyze",
            Command::EnumerateRegular => "enumerate-regular",
            Command::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

/// One batch job. Indices in every nested document are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    pub manifold: SpectrumJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character: Option<CharacterJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<KFormJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u32>,
    #[serde(default)]
    pub output: OutputFormat,
    /// `sections`: also emit every basis element as a form.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub basis: bool,
    /// `sections`: also emit the general section.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub general: bool,
}

impl JobSpec {
    pub fn new(command: Command, manifold: SpectrumJson) -> Self {
        JobSpec {
            command,
            manifold,
            character: None,
            form: None,
            k: None,
            max_degree: None,
            output: OutputFormat::Text,
            basis: false,
            general: false,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::input("job", e.to_string()))
    }
}

/// Report text plus exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Exit code for a failure: 3 for unsupported class/mode, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_unsupported() {
        3
    } else {
        2
    }
}

pub fn run(job: &JobSpec) -> RunOutput {
    match execute(job) {
        Ok(stdout) => RunOutput {
            stdout,
            stderr: String::new(),
            code: 0,
        },
        Err(e) => RunOutput {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: exit_code(&e),
        },
    }
}

/// Read a JSON document; when it is a job file holding `key`, return that
/// member instead of the whole document.
pub fn read_document(path: &Path, key: &str) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(key, format!("cannot read {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| Error::input(key, format!("{} is not valid JSON: {e}", path.display())))?;
    Ok(embedded(&v, key).cloned().unwrap_or(v))
}

/// `doc[key]` when `doc` looks like a job file (has a `manifold` member).
pub fn embedded<'a>(doc: &'a Value, key: &str) -> Option<&'a Value> {
    doc.get("manifold")?;
    doc.get(key)
}

pub fn from_value<T: serde::de::DeserializeOwned>(v: Value, field: &str) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::input(field, e.to_string()))
}

fn require<T: Clone>(v: &Option<T>, field: &str, command: Command) -> Result<T> {
    v.clone()
        .ok_or_else(|| Error::input(field, format!("required for `{}`", command.name())))
}

/// One line naming the structural case a report rests on.
pub fn case_label(c: &HopfClass) -> String {
    match c {
        HopfClass::Classical => {
            "classical case: coefficients are homogeneous polynomials of degree m - k".to_string()
        }
        HopfClass::NoResonance => {
            "no-resonance case: each coefficient is a single monomial z^(m - 1_I)".to_string()
        }
        HopfClass::WeakNoResonance { r, .. } => format!(
            "weak no-resonance case (block of {r}): monomial outside the block times a homogeneous block polynomial"
        ),
        HopfClass::GeneralResonant => {
            "general resonant spectrum: basis by exact lattice enumeration (no closed form)".to_string()
        }
    }
}

struct Context {
    spectrum: Spectrum,
    class: HopfClass,
}

fn context(job: &JobSpec) -> Result<Context> {
    let spectrum = job.manifold.to_spectrum()?;
    let class = classify(&spectrum, &compute_relation_lattice(&spectrum));
    Ok(Context { spectrum, class })
}

fn character(job: &JobSpec, s: &Spectrum) -> Result<Option<Character>> {
    job.character.as_ref().map(|c| c.to_character(s)).transpose()
}

fn problem(job: &JobSpec, cx: &Context) -> Result<SectionProblem> {
    let k = require(&job.k, "k", job.command)?;
    let c = character(job, &cx.spectrum)?
        .ok_or_else(|| Error::input("character", format!("required for `{}`", job.command.name())))?;
    let n = cx.spectrum.n();
    if n < 3 || k == 0 || k >= n {
        return Err(Error::input("k", format!("k = {k} must lie in 1..={} (n = {n})", n.saturating_sub(1))));
    }
    SectionProblem::new(cx.spectrum.clone(), k, c)
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn tuple(v: &[i64]) -> String {
    let p: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", p.join(","))
}

/// Run a job and render its report.
pub fn execute(job: &JobSpec) -> Result<String> {
    let cx = context(job)?;
    match job.command {
        Command::Classify => classify_report(job, &cx),
        Command::Sections | Command::Basis | Command::General => sections_report(job, &cx),
        Command::Analyze => analyze_report(job, &cx),
        Command::EnumerateRegular => regular_report(job, &cx),
        Command::Oracle => oracle_report(job, &cx),
    }
}

fn classify_report(job: &JobSpec, cx: &Context) -> Result<String> {
    if job.output == OutputFormat::Json {
        return to_json(&ClassJson::from(&cx.class));
    }
    let l = compute_relation_lattice(&cx.spectrum);
    let mut out = String::new();
    writeln!(out, "class: {}", cx.class).unwrap();
    writeln!(out, "case: {}", case_label(&cx.class)).unwrap();
    if l.is_trivial() {
        writeln!(out, "relations: none").unwrap();
    } else {
        let rows: Vec<String> = l.basis().iter().map(|r| tuple(r)).collect();
        writeln!(out, "relations (rank {}): {}", l.rank(), rows.join(" ")).unwrap();
    }
    Ok(out)
}

fn sections_report(job: &JobSpec, cx: &Context) -> Result<String> {
    let p = problem(job, cx)?;
    let basis = solve_sections(&p)?;
    let want_basis = job.basis || job.command == Command::Basis;
    let want_general = job.general || job.command == Command::General;
    let general = if want_general { Some(general_section(&p)?) } else { None };

    if job.output == OutputFormat::Json {
        if job.command == Command::General && !job.basis {
            return to_json(&GeneralJson::from(general.as_ref().expect("requested")));
        }
        let mut j = SectionsJson::new(&basis);
        if want_basis {
            j.basis = Some(basis.solutions.iter().map(|s| KFormJson::from(&s.to_kform())).collect());
        }
        j.general = general.as_ref().map(GeneralJson::from);
        return to_json(&j);
    }

    let mut out = String::new();
    writeln!(out, "case: {}", case_label(&cx.class)).unwrap();
    writeln!(out, "k = {}, character m = {}", p.k(), tuple(p.character().exponents())).unwrap();
    writeln!(out, "dim = {}", basis.dim()).unwrap();
    for note in &basis.notes {
        writeln!(out, "note: {note:?}").unwrap();
    }
    if job.command != Command::General || want_basis {
        for s in &basis.solutions {
            writeln!(out, "  {s}").unwrap();
        }
    }
    if let Some(g) = &general {
        writeln!(out, "general section ({} free coefficients):", g.num_symbols()).unwrap();
        writeln!(out, "  {g}").unwrap();
    }
    Ok(out)
}

fn analyze_report(job: &JobSpec, cx: &Context) -> Result<String> {
    let form = require(&job.form, "form", job.command)?.to_kform()?;
    if form.n() != cx.spectrum.n() {
        return Err(Error::input(
            "form.n",
            format!("form has n = {} but the manifold has n = {}", form.n(), cx.spectrum.n()),
        ));
    }
    if form.is_zero() {
        return Err(Error::input("form", "the zero form defines no Pfaff system"));
    }
    let b = character(job, &cx.spectrum)?;
    let report = analyze(Some(&cx.spectrum), b.as_ref(), &form)?;
    if job.output == OutputFormat::Json {
        return to_json(&report);
    }
    let mut out = String::new();
    writeln!(out, "case: {}", case_label(&cx.class)).unwrap();
    writeln!(out, "form: {form}").unwrap();
    write_report(&mut out, &report);
    Ok(out)
}

fn write_report(out: &mut String, r: &PfaffReport) {
    writeln!(out, "k = {} (codimension {} Pfaff system)", r.k, r.k).unwrap();
    match &r.character {
        Some(m) => writeln!(out, "character m = {}", tuple(m)).unwrap(),
        None => writeln!(out, "character: none (terms carry different weights)").unwrap(),
    }
    match r.sing_codim {
        None => writeln!(out, "singular set: empty (regular)").unwrap(),
        Some(c) => {
            writeln!(out, "singular set: codimension {c}").unwrap();
            let strata = match &r.singular_locus {
                SingularLocus::Exact(s) => s.clone(),
                SingularLocus::Probabilistic(v) => v.exact_strata.clone(),
            };
            for s in strata {
                let z: Vec<String> = s.zero_set.iter().map(|i| format!("z{i}")).collect();
                writeln!(out, "  {{{} = 0}}", z.join(" = ")).unwrap();
            }
            if let SingularLocus::Probabilistic(v) = &r.singular_locus {
                for s in &v.sampled {
                    let z: Vec<String> = s.zero_set.iter().map(|i| format!("z{i}")).collect();
                    writeln!(
                        out,
                        "  sampled orbit {{{} = 0}}: {} factors, rank {}, codim estimate {}",
                        z.join(" = "),
                        s.factors,
                        s.generic_rank,
                        s.codim_estimate.map_or("empty".to_string(), |c| c.to_string())
                    )
                    .unwrap();
                }
            }
        }
    }
    writeln!(out, "decomposable: {}", r.is_decomposable).unwrap();
    writeln!(out, "integrable: {}", serde_json::to_string(&r.is_integrable).unwrap().trim_matches('"')).unwrap();
    writeln!(out, "torus invariant: {}", r.torus_invariant).unwrap();
    if let Some(e) = r.equivariant {
        writeln!(out, "equivariant (f*w = b w): {e}").unwrap();
    }
    if let Some(leaf) = &r.compact_leaf {
        writeln!(out, "compact leaf: {}", leaf.description).unwrap();
    }
    for note in &r.notes {
        writeln!(out, "note: {note}").unwrap();
    }
}

fn regular_report(job: &JobSpec, cx: &Context) -> Result<String> {
    let k = require(&job.k, "k", job.command)?;
    let e: RegularEnumeration = enumerate_regular_systems(&cx.spectrum, k)?;
    if job.output == OutputFormat::Json {
        return to_json(&e);
    }
    let mut out = String::new();
    writeln!(out, "case: {}", case_label(&cx.class)).unwrap();
    writeln!(
        out,
        "n = {}, k = {}: {} characters in {{0,1}}^n, {} with sections, {} regular families",
        e.n,
        e.k,
        e.characters_examined,
        e.characters_with_sections,
        e.regular.len()
    )
    .unwrap();
    for sys in &e.regular {
        let leaf = sys
            .report
            .compact_leaf
            .as_ref()
            .map_or("-".to_string(), |l| l.description.clone());
        writeln!(
            out,
            "  m = {}: {}  integrable: {}  leaf: {leaf}",
            tuple(&sys.character),
            sys.form,
            sys.report.is_integrable.is_integrable()
        )
        .unwrap();
    }
    writeln!(
        out,
        "filtered: {} single basis elements vanish on a hypersurface; {} general members do",
        e.codim_one_basis_elements,
        e.codim_one.len()
    )
    .unwrap();
    if e.nonconstant_regular.is_empty() {
        writeln!(out, "every regular system is constant").unwrap();
    } else {
        writeln!(out, "non-constant regular systems: {}", e.nonconstant_regular.join("; ")).unwrap();
    }
    Ok(out)
}

/// Brute-force kernel of `p₀` up to a degree bound, compared with the
/// closed-form solver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleJson {
    pub max_degree: u32,
    /// Degree bound that provably contains every section.
    pub sufficient_degree: u32,
    pub dim: usize,
    pub solutions: Vec<SolutionJson>,
    /// Solver solutions of degree `<= max_degree` equal the oracle's.
    pub agrees_with_solver: bool,
}

fn oracle_report(job: &JobSpec, cx: &Context) -> Result<String> {
    let p = problem(job, cx)?;
    let sufficient = sufficient_degree(&p)?;
    let d = job.max_degree.unwrap_or(sufficient);
    let oracle: SectionBasis = brute_force_kernel(&p, d)?;
    let solver = solve_sections(&p)?;
    let truncated: Vec<_> = solver
        .solutions
        .into_iter()
        .filter(|s| s.alpha.degree() <= d)
        .collect();
    let j = OracleJson {
        max_degree: d,
        sufficient_degree: sufficient,
        dim: oracle.dim(),
        solutions: oracle.solutions.iter().map(SolutionJson::from).collect(),
        agrees_with_solver: truncated == oracle.solutions,
    };
    if job.output == OutputFormat::Json {
        return to_json(&j);
    }
    let mut out = String::new();
    writeln!(out, "case: {}", case_label(&cx.class)).unwrap();
    writeln!(
        out,
        "brute-force kernel of p0 over forms of coefficient degree <= {d} (sufficient: {sufficient})"
    )
    .unwrap();
    writeln!(out, "dim = {}", j.dim).unwrap();
    for s in &oracle.solutions {
        writeln!(out, "  {s}").unwrap();
    }
    writeln!(out, "agrees with closed-form solver: {}", j.agrees_with_solver).unwrap();
    Ok(out)
}

/// Shipped corpus: `(file name, job JSON)`.
pub const CORPUS: &[(&str, &str)] = &[
    ("noresonance_235.json", include_str!("../corpus/noresonance_235.json")),
    ("worked_example_1.json", include_str!("../corpus/worked_example_1.json")),
    ("worked_example_2.json", include_str!("../corpus/worked_example_2.json")),
    ("worked_example_3.json", include_str!("../corpus/worked_example_3.json")),
    ("classical_n5_k2_m3.json", include_str!("../corpus/classical_n5_k2_m3.json")),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub checks: Vec<CorpusCheck>,
}

impl CorpusSummary {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl std::fmt::Display for CorpusSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        writeln!(f, "{passed}/{} corpus checks passed", self.checks.len())
    }
}

fn corpus_job(name: &str) -> Result<JobSpec> {
    let (_, text) = CORPUS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::input("corpus", format!("missing corpus file {name}")))?;
    JobSpec::from_json(text)
}

/// Run a corpus job end to end with JSON output and parse the report back.
fn corpus_run<T: serde::de::DeserializeOwned>(name: &str) -> Result<(JobSpec, T)> {
    let mut job = corpus_job(name)?;
    job.output = OutputFormat::Json;
    let out = run(&job);
    if out.code != 0 {
        return Err(Error::input(name, out.stderr.trim().to_string()));
    }
    let parsed = serde_json::from_str(&out.stdout).map_err(|e| Error::input(name, e.to_string()))?;
    Ok((job, parsed))
}

fn check(name: &str, f: impl FnOnce() -> Result<(bool, String)>) -> CorpusCheck {
    match f() {
        Ok((passed, detail)) => CorpusCheck {
            name: name.to_string(),
            passed,
            detail,
        },
        Err(e) => CorpusCheck {
            name: name.to_string(),
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

/// Run the worked examples and reference jobs, checking each verdict and
/// the character recovered by weight bookkeeping.
pub fn corpus_verify() -> CorpusSummary {
    let mut checks = Vec::new();

    checks.push(check("noresonance_235 classify", || {
        let (_, c): (_, ClassJson) = corpus_run("noresonance_235.json")?;
        Ok((c.class == "NoResonance" && c.r.is_none(), format!("class {}", c.class)))
    }));

    checks.push(check("worked example 1 (classical, k = 2)", || {
        let (job, r): (_, PfaffReport) = corpus_run("worked_example_1.json")?;
        let m = r.character.clone().unwrap_or_default();
        let s = job.manifold.to_spectrum()?;
        let w = job.form.as_ref().expect("corpus form").to_kform()?;
        let homogeneous = w.terms().all(|(_, g)| g.homogeneous_degree() == Some(1));
        let total: i64 = m.iter().sum();
        let b = Character::from_exponents(&s, m.clone())?;
        let equivariant = crate::analysis::check_equivariance(&s, &compute_relation_lattice(&s), &b, &w)?;
        let ok = r.is_regular && r.k == 2 && total == 3 && homogeneous && equivariant;
        Ok((
            ok,
            format!(
                "regular = {}, k = {}, b = mu^{total} (m = {}), coefficient degree m - k = 1: {homogeneous}",
                r.is_regular,
                r.k,
                tuple(&m)
            ),
        ))
    }));

    checks.push(check("worked example 2 (no-resonance, k = 3)", || {
        let (_, r): (_, PfaffReport) = corpus_run("worked_example_2.json")?;
        let m = r.character.clone().unwrap_or_default();
        let ok = !r.is_regular && r.sing_codim == Some(2) && r.k == 3 && m == vec![1; 5];
        Ok((
            ok,
            format!(
                "regular = {}, sing codim = {:?}, b = mu1*...*mu5 (m = {})",
                r.is_regular,
                r.sing_codim,
                tuple(&m)
            ),
        ))
    }));

    checks.push(check("worked example 3 (weak no-resonance, k = 2)", || {
        let (job, r): (_, PfaffReport) = corpus_run("worked_example_3.json")?;
        let m = r.character.clone().unwrap_or_default();
        let s = job.manifold.to_spectrum()?;
        let class = classify(&s, &compute_relation_lattice(&s));
        let block = class.block().map(<[usize]>::to_vec).unwrap_or_default();
        let ok = !r.is_regular
            && r.sing_codim == Some(2)
            && r.k == 2
            && m.len() == 6
            && block == vec![0, 1, 2]
            && block_degree(&m, &block) == 1
            && m[3..] == [1, 1, 1];
        Ok((
            ok,
            format!(
                "regular = {}, sing codim = {:?}, block degree {} with m4 = m5 = m6 = 1 (m = {})",
                r.is_regular,
                r.sing_codim,
                block_degree(&m, &block),
                tuple(&m)
            ),
        ))
    }));

    checks.push(check("classical n = 5, k = 2, m = 3 sections", || {
        let (_, j): (_, SectionsJson) = corpus_run("classical_n5_k2_m3.json")?;
        Ok((j.dim == 50, format!("dim = {}", j.dim)))
    }));

    CorpusSummary { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(text: &str) -> JobSpec {
        JobSpec::from_json(text).unwrap()
    }

    #[test]
    fn classify_corpus() {
        let mut j = corpus_job("noresonance_235.json").unwrap();
        j.output = OutputFormat::Json;
        let out = run(&j);
        assert_eq!(out.code, 0);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v, serde_json::json!({"class": "NoResonance"}));
    }

    #[test]
    fn corpus_passes() {
        let s = corpus_verify();
        assert!(s.all_passed(), "{s}");
    }

    #[test]
    fn missing_k_names_field() {
        let out = run(&job(
            r#"{"command":"sections","manifold":{"n":3,"mode":"exact","mu":[{"num":1,"den":2},{"num":1,"den":3},{"num":1,"den":5}]},"character":{"exponents":[1,1,0]}}"#,
        ));
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("`k`"), "{}", out.stderr);
    }

    #[test]
    fn unsupported_exit_three() {
        let out = run(&job(
            r#"{"command":"general","k":1,"manifold":{"n":3,"mode":"exact","mu":[{"num":1,"den":2},{"num":1,"den":4},{"num":1,"den":3}]},"character":{"exponents":[0,1,1]}}"#,
        ));
        assert_eq!(out.code, 3, "{}", out.stderr);
        let out = run(&job(
            r#"{"command":"enumerate-regular","k":1,"manifold":{"n":3,"mode":"symbolic","classes":[1,1,2]}}"#,
        ));
        assert_eq!(out.code, 3, "{}", out.stderr);
    }

    #[test]
    fn text_output_names_case() {
        let out = run(&corpus_job("classical_n5_k2_m3.json").unwrap());
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("classical case"));
        assert!(out.stdout.contains("dim = 50"));
    }

    #[test]
    fn job_round_trip() {
        for (name, text) in CORPUS {
            let j = JobSpec::from_json(text).unwrap();
            let again = JobSpec::from_json(&serde_json::to_string(&j).unwrap()).unwrap();
            assert_eq!(j, again, "{name}");
        }
    }
}
