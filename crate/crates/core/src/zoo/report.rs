//! Classification of a chart into an ordered, deterministic report.

use std::fmt::Write as _;
use std::str::FromStr;

use pseudosym_expr::{Context, Expr};
use serde::{Deserialize, Serialize};

use crate::algebra::{
    check_gct, derived_tensor, dot_action, dot_action_up, kulkarni_nomizu, second_bianchi_sum,
    CurvatureKind,
};
use crate::chart::Chart;
use crate::classify::decompose::{
    corollary47_decomposition, generalized_roter_generators, relations, roter_generators,
    solve_generalized_roter, solve_quasi_einstein, solve_roter, Combination, QuasiEinsteinKind,
    WedgeSquare,
};
use crate::classify::forms::{check_one_form_recurrence, check_two_form_recurrence};
use crate::classify::pseudo::{classify_deszcz, Proportionality};
use crate::classify::torse::{chaki_conditions, theorem41_identity};
use crate::classify::weak::{
    is_codazzi, is_cyclic_parallel, is_proper, normalize_weak_solution, solve_chaki,
    solve_recurrence, solve_weak_symmetry_04, solve_weak_z, FormSolution,
};
use crate::classify::{Identity, Outcome, Solved, TensorEquation};
use crate::geometry::{covariant_derivative, generic_rank, ricci, riemann, riemann_up, scalar_curvature};
use crate::linsolve::SolutionSpace;
use crate::tensor::{OneForm, Tensor};

use super::oracle::{oracle_crosscheck, OracleSummary};
use super::spec::{MetricSpec, SpecError};

/// Groups of classifiers selectable on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Structure,
    Semisymmetry,
    Deszcz,
    Chaki,
    Weak,
    Recurrence,
    Forms,
    Ricci,
    Roter,
    QuasiEinstein,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::Structure,
        Check::Semisymmetry,
        Check::Deszcz,
        Check::Chaki,
        Check::Weak,
        Check::Recurrence,
        Check::Forms,
        Check::Ricci,
        Check::Roter,
        Check::QuasiEinstein,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Structure => "structure",
            Check::Semisymmetry => "semisymmetry",
            Check::Deszcz => "deszcz",
            Check::Chaki => "chaki",
            Check::Weak => "weak",
            Check::Recurrence => "recurrence",
            Check::Forms => "forms",
            Check::Ricci => "ricci",
            Check::Roter => "roter",
            Check::QuasiEinstein => "quasi_einstein",
        }
    }
}

impl FromStr for Check {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check `{s}`"))
    }
}

/// A tensor `T` the per-tensor classifiers run on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TensorChoice {
    Curvature(CurvatureKind),
    Ricci,
}

impl TensorChoice {
    pub const DEFAULT: [TensorChoice; 6] = [
        TensorChoice::Curvature(CurvatureKind::R),
        TensorChoice::Curvature(CurvatureKind::C),
        TensorChoice::Curvature(CurvatureKind::K),
        TensorChoice::Curvature(CurvatureKind::Conh),
        TensorChoice::Curvature(CurvatureKind::P),
        TensorChoice::Ricci,
    ];

    pub fn name(self) -> String {
        match self {
            TensorChoice::Curvature(k) => k.to_string(),
            TensorChoice::Ricci => "S".to_string(),
        }
    }

    fn tensor(self, chart: &Chart) -> Tensor {
        match self {
            TensorChoice::Curvature(k) => derived_tensor(chart, k),
            TensorChoice::Ricci => ricci(chart).clone(),
        }
    }
}

impl FromStr for TensorChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "S" {
            return Ok(TensorChoice::Ricci);
        }
        CurvatureKind::parse(s)
            .map(TensorChoice::Curvature)
            .ok_or_else(|| format!("unknown tensor `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub checks: Vec<Check>,
    pub tensors: Vec<TensorChoice>,
    /// `None` skips the oracle.
    pub oracle_samples: Option<usize>,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            checks: Check::ALL.to_vec(),
            tensors: TensorChoice::DEFAULT.to_vec(),
            oracle_samples: Some(super::oracle::DEFAULT_SAMPLES),
            seed: super::oracle::DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub classifier: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tensor: Option<String>,
    pub outcome: Outcome,
    pub witness: Vec<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartInfo {
    pub name: String,
    pub dim: usize,
    pub coords: Vec<String>,
    pub params: Vec<String>,
    pub kappa: String,
    pub ricci_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub chart: ChartInfo,
    pub verdicts: Vec<Verdict>,
    /// Every solver's back-substitution succeeded.
    pub consistent: bool,
    pub oracle: Option<OracleSummary>,
}

impl Report {
    pub fn find(&self, classifier: &str, tensor: Option<&str>) -> Option<&Verdict> {
        self.verdicts
            .iter()
            .find(|v| v.classifier == classifier && v.tensor.as_deref() == tensor)
    }
}

/// A report plus the identities behind its positive verdicts.
#[derive(Debug)]
pub struct Classified {
    pub report: Report,
    pub identities: Vec<Identity>,
}

struct Builder<'a> {
    chart: &'a Chart,
    verdicts: Vec<Verdict>,
    identities: Vec<Identity>,
    consistent: bool,
    /// Parameters introduced for free unknowns of solution families.
    family_params: usize,
}

impl<'a> Builder<'a> {
    fn ctx(&self) -> &Context {
        self.chart.context()
    }

    fn render(&self, e: &Expr) -> String {
        e.render(self.ctx())
    }

    fn form(&self, w: &OneForm) -> String {
        w.render(self.ctx())
    }

    fn push(&mut self, classifier: &str, tensor: Option<&str>, outcome: Outcome, witness: Vec<(String, String)>) {
        self.verdicts.push(Verdict {
            classifier: classifier.to_string(),
            tensor: tensor.map(str::to_string),
            outcome,
            witness: witness
                .into_iter()
                .map(|(name, value)| Witness { name, value })
                .collect(),
        });
    }

    fn identity(&mut self, id: Option<Identity>) {
        if let Some(id) = id {
            self.identities.push(id);
        }
    }

    fn solved(&mut self, s: &Solved) {
        self.consistent &= s.verified;
    }

    fn space_witness(&self, space: &SolutionSpace) -> Vec<(String, String)> {
        let summary = space.describe(self.ctx());
        let mut w: Vec<(String, String)> = summary.values;
        if !summary.free.is_empty() {
            w.push(("free".to_string(), summary.free.join(", ")));
        }
        w
    }

    /// The general member of a solution family, free unknowns as fresh parameters.
    fn family_identity(&mut self, eq: &TensorEquation, space: &SolutionSpace, label: String) -> Option<Identity> {
        if !space.consistent {
            return None;
        }
        let base = self.ctx().params().len() + self.family_params;
        self.family_params += space.basis.len();
        let t: Vec<Expr> = (0..space.basis.len()).map(|j| Expr::param(base + j)).collect();
        let u = space.member(&t);
        Some(eq.identity(label, &u))
    }

    fn structure(&mut self, name: &str, kind: CurvatureKind, t: &Tensor) {
        let ax = check_gct(t);
        let mut w = vec![
            ("first_bianchi".to_string(), ax.first_bianchi.to_string()),
            ("pair_skew".to_string(), ax.pair_skew.to_string()),
            ("block_interchange".to_string(), ax.block_interchange.to_string()),
        ];
        let mut ok = ax.all();
        if kind == CurvatureKind::R {
            let dt = covariant_derivative(self.chart, t);
            let proper = second_bianchi_sum(&dt).is_zero();
            w.push(("second_bianchi".to_string(), proper.to_string()));
            ok &= proper;
            if proper {
                self.identities.push(cyclic_identity(format!("second Bianchi [{name}]"), &dt, &[2, 0, 1, 3, 4], &[1, 2, 0, 3, 4]));
            }
        }
        if ax.first_bianchi {
            self.identities.push(cyclic_identity(format!("first Bianchi [{name}]"), t, &[2, 0, 1, 3], &[1, 2, 0, 3]));
        }
        if ax.pair_skew {
            let id = Identity::new(format!("pair skew [{name}]"), t.clone(), vec![(-Expr::one(), t.permuted(&[1, 0, 2, 3]))]);
            self.identities.push(id);
        }
        if ax.block_interchange {
            let id = Identity::new(format!("block interchange [{name}]"), t.clone(), vec![(Expr::one(), t.permuted(&[2, 3, 0, 1]))]);
            self.identities.push(id);
        }
        self.push("gct", Some(name), Outcome::from_bool(ok), w);
    }

    fn walker(&mut self) {
        let rr = dot_action_up(riemann_up(self.chart), riemann(self.chart));
        let id = cyclic_identity("Walker cyclic sum [R]".to_string(), &rr, &[4, 5, 0, 1, 2, 3], &[2, 3, 4, 5, 0, 1]);
        let ok = id.holds();
        if ok {
            self.identities.push(id);
        }
        self.push("walker", Some("R"), Outcome::from_bool(ok), vec![]);
    }

    fn deszcz(&mut self, classifier: &str, name: &str, acting: &Tensor, t: &Tensor, w: &Tensor, wname: &str) {
        let r = classify_deszcz(self.chart, acting, t, w);
        let (outcome, witness) = match &r.result {
            Proportionality::Factor(l) => (Outcome::Holds, vec![("L".to_string(), self.render(l))]),
            Proportionality::Independent => (Outcome::Fails, vec![]),
            Proportionality::Degenerate => (Outcome::Degenerate(format!("Q({wname},{name}) and the action both vanish")), vec![]),
        };
        let id = r.identity(format!("{classifier} [{name}]"));
        self.identity(id);
        self.push(classifier, Some(name), outcome, witness);
    }

    fn form_solution(&mut self, classifier: &str, name: &str, sol: &FormSolution) {
        self.solved(&sol.solved);
        let outcome = sol.outcome();
        let witness = if outcome.holds() {
            self.space_witness(sol.space())
        } else {
            vec![]
        };
        if outcome.holds() {
            let id = self.family_identity(&sol.equation, sol.space(), format!("{classifier} [{name}]"));
            self.identity(id);
        }
        self.push(classifier, Some(name), outcome, witness);
    }

    fn chaki(&mut self, name: &str, t: &Tensor) {
        let sol = solve_chaki(self.chart, t);
        self.form_solution("chaki", name, &sol);
        if !sol.outcome().holds() {
            return;
        }
        let phi = sol.forms().remove(0);
        let alpha = phi.scale(&Expr::int(2));
        let id = theorem41_identity(self.chart, t, &alpha, &phi);
        let ok = id.holds();
        self.identities.push(Identity { label: format!("theorem41 [{name}]"), ..id });
        self.push("theorem41", Some(name), Outcome::from_bool(ok), vec![
            ("alpha".to_string(), self.form(&alpha)),
            ("pi".to_string(), self.form(&phi)),
        ]);
        if t.order() == 4 {
            self.chaki_corollaries(name, t, &phi);
        }
    }

    fn chaki_corollaries(&mut self, name: &str, t: &Tensor, phi: &OneForm) {
        let cond = chaki_conditions(self.chart, phi);
        let mut w = vec![
            ("phi_closed".to_string(), cond.phi_closed.to_string()),
            ("H".to_string(), cond.h.describe("H", self.ctx()).join("; ")),
        ];
        let prop = |p: &Proportionality| match p {
            Proportionality::Factor(l) => l.render(self.ctx()),
            _ => "none".to_string(),
        };
        w.push(("H/g".to_string(), prop(&cond.h_to_g)));
        w.push(("H/S".to_string(), prop(&cond.h_to_s)));
        match &cond.torseforming {
            Some(tf) => {
                w.push(("torseforming_a".to_string(), self.render(&tf.a)));
                w.push(("torseforming_tau".to_string(), self.form(&tf.tau)));
                if let Some(b) = &tf.b {
                    w.push(("torseforming_b".to_string(), self.render(b)));
                }
            }
            None => w.push(("torseforming".to_string(), "false".to_string())),
        }
        let mut found = cond.implies_semisymmetric() || cond.implies_deszcz() || cond.implies_ricci_generalized();
        for (wname, wt) in [("g", self.chart.metric().clone()), ("S", ricci(self.chart).clone())] {
            let key = format!("D[{wname}]");
            match corollary47_decomposition(t, &wt, &cond.h) {
                WedgeSquare::Solutions(sols) if !sols.is_empty() => {
                    found = true;
                    let parts: Vec<String> = sols
                        .iter()
                        .map(|(l1, l2)| format!("L1 = {}, L2 = {}", self.render(l1), self.render(l2)))
                        .collect();
                    for (l1, l2) in &sols {
                        let d = wt.scale(l2).sub(&cond.h);
                        self.identities.push(Identity::new(
                            format!("{name} = L1 D∧D, D = L2 {wname} - H"),
                            t.clone(),
                            vec![(l1.clone(), kulkarni_nomizu(&d, &d))],
                        ));
                    }
                    w.push((key, parts.join(" | ")));
                }
                WedgeSquare::Solutions(_) => w.push((key, "none".to_string())),
                WedgeSquare::Degenerate => w.push((key, "degenerate".to_string())),
                WedgeSquare::Underdetermined => w.push((key, "underdetermined".to_string())),
            }
        }
        self.push("chaki_corollaries", Some(name), Outcome::from_bool(found), w);
    }

    fn weak(&mut self, name: &str, t: &Tensor) {
        if t.order() == 4 {
            let sol = solve_weak_symmetry_04(self.chart, t);
            self.form_solution("weak_symmetry", name, &sol);
            if sol.outcome().holds() {
                let proper = is_proper(self.chart, t);
                match normalize_weak_solution(&sol, proper) {
                    Ok(nz) => {
                        let mut w = vec![("proper".to_string(), proper.to_string())];
                        if let Some(eps) = nz.epsilon() {
                            w.push(("epsilon".to_string(), self.form(&eps)));
                        }
                        self.push("weak_normalized", Some(name), Outcome::Holds, w);
                    }
                    Err(e) => {
                        self.consistent = false;
                        self.push("weak_normalized", Some(name), Outcome::Fails, vec![("error".to_string(), e.to_string())]);
                    }
                }
            }
        } else if t.order() == 2 {
            let wz = solve_weak_z(self.chart, t);
            self.form_solution("weak_z", name, &wz.solution);
            if !wz.checks_pass() {
                self.consistent = false;
            }
        }
    }

    fn forms(&mut self, name: &str, t: &Tensor) {
        if t.is_zero() {
            let why = Outcome::Degenerate("T vanishes identically".to_string());
            let labels: &[&str] = if t.order() == 4 { &["b1", "b2", "b3"] } else { &["b4"] };
            for label in labels {
                self.push(label, Some(name), why.clone(), vec![]);
            }
            return;
        }
        if t.order() == 4 {
            let rec = check_two_form_recurrence(self.chart, t);
            self.solved(&rec.b2);
            self.solved(&rec.b3);
            if rec.b1 {
                let dt = covariant_derivative(self.chart, t);
                self.identities.push(cyclic_identity(format!("b1 [{name}]"), &dt, &[2, 0, 1, 3, 4], &[1, 2, 0, 3, 4]));
            }
            self.push("b1", Some(name), rec.b1_outcome(), vec![]);
            let b2 = rec.b2_outcome();
            let w2 = if b2.holds() {
                self.space_witness(&rec.b2.space)
            } else {
                vec![]
            };
            if b2.holds() {
                let hom = TensorEquation::new(rec.equation.names.clone(), Tensor::zeros(t.dim(), 5), rec.equation.coeffs.clone());
                let id = self.family_identity(&hom, &rec.b2.space, format!("b2 [{name}]"));
                self.identity(id);
            }
            self.push("b2", Some(name), b2, w2);
            let w3 = match rec.b3_alpha() {
                Some(a) => vec![("alpha".to_string(), self.form(&a))],
                None => vec![],
            };
            let id = rec.b3_identity(format!("b3 [{name}]"));
            self.identity(id);
            self.push("b3", Some(name), rec.b3_outcome(), w3);
        } else if t.order() == 2 {
            let rec = check_one_form_recurrence(self.chart, t);
            self.solved(&rec.solved);
            let w = match rec.alpha() {
                Some(a) => vec![("alpha".to_string(), self.form(&a))],
                None => vec![],
            };
            let id = rec.identity(format!("b4 [{name}]"));
            self.identity(id);
            self.push("b4", Some(name), rec.outcome(), w);
        }
    }

    fn combination(&mut self, classifier: &str, comb: &Combination) {
        self.solved(&comb.solved);
        let outcome = if comb.equation.lhs.is_zero() {
            Outcome::Degenerate("R vanishes identically".to_string())
        } else {
            comb.outcome()
        };
        let witness = if outcome.holds() {
            self.space_witness(comb.space())
        } else {
            vec![]
        };
        let id = self.family_identity(&comb.equation, comb.space(), classifier.to_string());
        self.identity(id);
        self.push(classifier, None, outcome, witness);
    }

    fn roter(&mut self) {
        let r = riemann(self.chart);
        let roter = solve_roter(self.chart, r);
        self.combination("roter", &roter);
        let gr = solve_generalized_roter(self.chart, r);
        self.combination("generalized_roter", &gr);
        // linear relations among the generators, reported when nontrivial
        for (classifier, gens) in [
            ("roter_relations", roter_generators(self.chart)),
            ("generalized_roter_relations", generalized_roter_generators(self.chart)),
        ] {
            let rel = relations(gens);
            self.solved(&rel.solved);
            let nontrivial = !rel.space().basis.is_empty();
            let witness = if nontrivial {
                self.space_witness(rel.space())
            } else {
                vec![]
            };
            if nontrivial {
                let id = self.family_identity(&rel.equation, rel.space(), classifier.to_string());
                self.identity(id);
            }
            self.push(classifier, None, Outcome::from_bool(nontrivial), witness);
        }
    }

    fn quasi_einstein(&mut self) {
        let found = solve_quasi_einstein(self.chart);
        let mut witness = Vec::new();
        let mut holds = false;
        for (i, qe) in found.iter().enumerate() {
            let tag = if found.len() > 1 { format!("[{}]", i + 1) } else { String::new() };
            witness.push((format!("alpha{tag}"), self.render(&qe.alpha)));
            match &qe.kind {
                QuasiEinsteinKind::Einstein => {
                    holds = true;
                    witness.push((format!("kind{tag}"), "einstein".to_string()));
                }
                QuasiEinsteinKind::Proper { beta, eta, eps } => {
                    holds = true;
                    witness.push((format!("beta{tag}"), self.render(beta)));
                    witness.push((format!("eta{tag}"), self.form(eta)));
                    witness.push((format!("g(eta,eta){tag}"), eps.to_string()));
                }
                QuasiEinsteinKind::NoExprFactor => {
                    witness.push((format!("kind{tag}"), "no expression witness for eta".to_string()));
                }
            }
            let id = qe.identity(self.chart, format!("quasi-Einstein{tag}"));
            self.identity(id);
        }
        self.push("quasi_einstein", None, Outcome::from_bool(holds), witness);
    }
}

/// `T = -T∘σ - T∘σ²` for a cyclic slot permutation `σ`.
fn cyclic_identity(label: String, t: &Tensor, sigma: &[usize], sigma2: &[usize]) -> Identity {
    let m = -Expr::one();
    Identity::new(label, t.clone(), vec![(m.clone(), t.permuted(sigma)), (m, t.permuted(sigma2))])
}

/// Runs the selected classifiers in a fixed order and, if requested, the oracle.
pub fn classify_chart(chart: &Chart, options: &Options) -> Classified {
    let has = |c: Check| options.checks.contains(&c);
    let mut tensors = options.tensors.clone();
    tensors.sort();
    tensors.dedup();
    let mut b = Builder {
        chart,
        verdicts: Vec::new(),
        identities: Vec::new(),
        consistent: true,
        family_params: 0,
    };
    let r = riemann(chart);
    let g = chart.metric();
    let s = ricci(chart);
    let n = chart.dim();
    let built: Vec<(TensorChoice, String, Tensor)> = tensors.iter().map(|&c| (c, c.name(), c.tensor(chart))).collect();

    if has(Check::Structure) {
        for (choice, name, t) in &built {
            if let TensorChoice::Curvature(kind) = choice {
                b.structure(name, *kind, t);
            }
        }
        if tensors.contains(&TensorChoice::Curvature(CurvatureKind::R)) {
            b.walker();
        }
    }
    for (_, name, t) in &built {
        if has(Check::Semisymmetry) {
            let ok = dot_action(chart, r, t).is_zero();
            b.push("semisymmetric", Some(name), Outcome::from_bool(ok), vec![]);
        }
        if has(Check::Deszcz) {
            b.deszcz("deszcz_g", name, r, t, g, "g");
            b.deszcz("deszcz_s", name, r, t, s, "S");
        }
        if has(Check::Chaki) {
            b.chaki(name, t);
        }
        if has(Check::Weak) {
            b.weak(name, t);
        }
        if has(Check::Recurrence) {
            let sol = solve_recurrence(chart, t);
            b.form_solution("recurrent", name, &sol);
        }
        if has(Check::Forms) {
            b.forms(name, t);
        }
    }
    if has(Check::Deszcz) && n >= 4 && tensors.contains(&TensorChoice::Curvature(CurvatureKind::C)) {
        let c = derived_tensor(chart, CurvatureKind::C);
        b.deszcz("weyl_pseudosymmetric", "C", &c, &c, g, "g");
    }
    if has(Check::Ricci) {
        let codazzi = is_codazzi(chart, s);
        b.push("codazzi", Some("S"), Outcome::from_bool(codazzi), vec![]);
        let cyclic = is_cyclic_parallel(chart, s);
        b.push("cyclic_parallel", Some("S"), Outcome::from_bool(cyclic), vec![]);
    }
    if has(Check::Roter) {
        b.roter();
    }
    if has(Check::QuasiEinstein) {
        b.quasi_einstein();
    }

    let ctx = chart.context();
    let report = Report {
        chart: ChartInfo {
            name: chart.name().to_string(),
            dim: n,
            coords: ctx.coords().to_vec(),
            params: ctx.params().to_vec(),
            kappa: scalar_curvature(chart).render(ctx),
            ricci_rank: generic_rank(s),
        },
        verdicts: b.verdicts,
        consistent: b.consistent,
        oracle: options
            .oracle_samples
            .map(|samples| oracle_crosscheck(&b.identities, samples, options.seed)),
    };
    Classified {
        report,
        identities: b.identities,
    }
}

pub fn classify(spec: &MetricSpec, options: &Options) -> Result<Classified, SpecError> {
    Ok(classify_chart(&spec.chart()?, options))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}`")),
        }
    }
}

fn outcome_word(o: &Outcome) -> String {
    match o {
        Outcome::Holds => "holds".to_string(),
        Outcome::Fails => "fails".to_string(),
        Outcome::Degenerate(why) => format!("degenerate ({why})"),
    }
}

pub fn render_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => render_text(report),
    }
}

fn render_text(report: &Report) -> String {
    let c = &report.chart;
    let mut out = String::new();
    let _ = writeln!(out, "chart {} (dim {})", c.name, c.dim);
    let _ = writeln!(out, "coords: {}", c.coords.join(", "));
    if !c.params.is_empty() {
        let _ = writeln!(out, "params: {}", c.params.join(", "));
    }
    let _ = writeln!(out, "kappa = {}", c.kappa);
    let _ = writeln!(out, "rank(S) = {}", c.ricci_rank);
    let _ = writeln!(out, "consistent: {}", report.consistent);
    for v in &report.verdicts {
        let head = match &v.tensor {
            Some(t) => format!("{}[{}]", v.classifier, t),
            None => v.classifier.clone(),
        };
        let _ = writeln!(out, "{head}: {}", outcome_word(&v.outcome));
        for w in &v.witness {
            let _ = writeln!(out, "    {} = {}", w.name, w.value);
        }
    }
    if let Some(o) = &report.oracle {
        let _ = writeln!(
            out,
            "oracle: {} identities, {} samples, seed {}, {} disagreements, {} inconclusive",
            o.identities, o.samples, o.seed, o.disagreements, o.inconclusive
        );
        for chk in o.checks.iter().filter(|c| c.status != super::oracle::CheckStatus::Agrees) {
            let _ = writeln!(out, "    {:?}: {}", chk.status, chk.label);
        }
    }
    out
}
