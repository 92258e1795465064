//! Named check suites over a loaded instance.

use std::cell::OnceCell;

use crate::calculus::{connection_from_chi, verify_ideal, Annihilator, Calculus, ConnectionForm};
use crate::connection::{
    connecting_identity, curvature_extract, leibniz_criterion, regularity_space, verify_chi, verify_curvature,
    verify_frame, vertical_derivation, CovMap, RegularityOptions, RegularitySpace,
};
use crate::error::{Error, Result};
use crate::homogeneous::Homogeneous;
use crate::instance::Instance;
use crate::linebundle::{LineBundle, LineSpec};
use crate::ncalg::{full_check, Algebra, NcPoly};
use crate::report::{Check, Report};
use crate::sample::Sampler;
use crate::torsion::{second_structure_hor, torsion, verify_delta, verify_form, verify_torsion};

pub const SUITES: [&str; 7] = ["frame", "curvature", "torsion", "calculus", "regularity", "homogeneous", "all"];

/// Command line overrides of the instance's check settings.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub bound: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

/// Algebraic consistency of a freshly loaded instance: confluence, Hopf axioms
/// and the bimodule structure.
pub fn validate(inst: &Instance) -> Report {
    let r = Runner::new(inst, RunOptions::default());
    let len = inst.def.checks.confluence_len;
    let group = r.group_samples();
    let span: Vec<NcPoly> = inst.hopf.alg.normal_words(inst.def.checks.group_len).into_iter().map(NcPoly::word).collect();
    let mut checks = vec![
        confluence("confluence.group", &inst.hopf.alg, len),
        confluence("confluence.total", &inst.bundle.total, len),
        confluence("confluence.hor", &inst.hor.alg, len),
    ];
    checks.extend(inst.hopf.verify(&group, &span));
    checks.extend(inst.bm.verify(&inst.hopf, &group));
    checks.extend(inst.hor.ext.verify(&inst.bm, &inst.hopf, len));
    Report::new(inst.name(), "validate", r.seed, checks)
}

/// Runs `suite` on `inst` and returns the sorted report.
pub fn run(inst: &Instance, suite: &str, opts: RunOptions) -> Result<Report> {
    let r = Runner::new(inst, opts);
    let checks = match suite {
        "frame" => r.frame(),
        "curvature" => r.curvature(),
        "torsion" => r.torsion(),
        "calculus" => r.calculus(),
        "regularity" => r.regularity(),
        "homogeneous" => r.homogeneous(),
        "all" => {
            let mut all = r.frame();
            all.extend(r.curvature());
            all.extend(r.torsion());
            all.extend(r.calculus());
            all.extend(r.regularity());
            all.extend(r.homogeneous());
            all
        }
        other => return Err(Error::Config(format!("unknown suite '{other}' (expected one of {})", SUITES.join(", ")))),
    };
    Ok(Report::new(inst.name(), suite, r.seed, checks))
}

/// `form.x1` + `form.defect` gives `form.x1.defect`; otherwise the names are joined.
fn prefixed(prefix: &str, checks: Vec<Check>) -> Vec<Check> {
    let head = prefix.split('.').next().unwrap_or(prefix);
    checks
        .into_iter()
        .map(|mut c| {
            c.name = match c.name.split_once('.') {
                Some((h, rest)) if h == head => format!("{prefix}.{rest}"),
                _ => format!("{prefix}.{}", c.name),
            };
            c
        })
        .collect()
}

fn confluence(name: &str, alg: &Algebra, len: usize) -> Check {
    let anchor = format!("overlap ambiguities of {} resolve up to length {len}", alg.name);
    match full_check(alg, len) {
        Ok(r) => match r.failures().next() {
            None => Check::pass(name, anchor),
            Some(a) => Check::fail(name, anchor, format!("{a:?}")),
        },
        Err(e) => Check::fail(name, anchor, e.to_string()),
    }
}

struct Runner<'a> {
    inst: &'a Instance,
    bound: usize,
    samples: usize,
    seed: u64,
    line: OnceCell<Option<LineBundle>>,
    calc: OnceCell<Option<std::result::Result<Calculus, String>>>,
    space: OnceCell<RegularitySpace>,
}

impl<'a> Runner<'a> {
    fn new(inst: &'a Instance, opts: RunOptions) -> Self {
        let c = &inst.def.checks;
        Runner {
            inst,
            bound: opts.bound.unwrap_or(c.bound),
            samples: opts.samples.unwrap_or(c.samples),
            seed: opts.seed.unwrap_or(c.seed),
            line: OnceCell::new(),
            calc: OnceCell::new(),
            space: OnceCell::new(),
        }
    }

    fn line(&self) -> Option<&LineBundle> {
        self.line.get_or_init(|| LineSpec::recognise(&self.inst.def).and_then(|s| s.build().ok())).as_ref()
    }

    fn calc(&self) -> Option<std::result::Result<&Calculus, &str>> {
        self.calc
            .get_or_init(|| self.inst.def.calculus.as_ref().map(|d| Calculus::build(self.inst, d).map_err(|e| e.to_string())))
            .as_ref()
            .map(|r| r.as_ref().map_err(|e| e.as_str()))
    }

    fn space(&self) -> &RegularitySpace {
        self.space.get_or_init(|| regularity_space(&self.inst.hor, &self.inst.pairs, RegularityOptions::new(self.bound)))
    }

    /// Declared connections followed by the basis of the regularity space.
    fn vertical_maps(&self) -> Vec<(String, CovMap)> {
        let mut maps = self.inst.connections.clone();
        maps.extend(self.space().basis.iter().enumerate().map(|(k, c)| (format!("x{}", k + 1), c.clone())));
        maps
    }

    fn hor_samples(&self) -> Vec<NcPoly> {
        self.inst.samples(self.samples, self.seed)
    }

    fn group_samples(&self) -> Vec<NcPoly> {
        let alg = &self.inst.hopf.alg;
        let gens: Vec<u32> = (0..alg.num_gens() as u32).collect();
        let mut s = Sampler::new(self.seed ^ 0x9a0);
        (0..self.samples).map(|_| s.element(alg, &gens, self.inst.def.checks.group_len, 3)).collect()
    }

    fn frame(&self) -> Vec<Check> {
        let inst = self.inst;
        let hor_samples = self.hor_samples();
        let mut checks = validate(inst).checks;
        checks.extend(inst.bundle.verify(&inst.total_samples(self.samples, self.seed)));
        checks.extend(inst.hor.verify(&hor_samples, &inst.bundle.base));
        checks.extend(inst.pairs.verify(&inst.bundle));
        checks.extend(verify_frame(&inst.bundle, &inst.hor, &inst.nabla, inst.coords.as_ref(), &hor_samples));
        if let Some(lb) = self.line() {
            checks.extend(lb.verify(self.samples, self.seed));
        }
        checks
    }

    fn curvature(&self) -> Vec<Check> {
        let inst = self.inst;
        let (hor, pairs) = (&inst.hor, &inst.pairs);
        let glen = inst.def.checks.group_len;
        let samples = self.hor_samples();
        let rho = curvature_extract(hor, pairs, &inst.nabla);
        let mut checks = verify_curvature(hor, pairs, &inst.nabla, &rho, &samples, glen);
        for (name, chi) in self.vertical_maps() {
            let d = inst.nabla.add(&vertical_derivation(hor, pairs, &chi));
            let mut sub = verify_chi(hor, pairs, &chi, &samples, glen);
            sub.push(connecting_identity(hor, pairs, &d, &chi, glen));
            sub.extend(leibniz_criterion(&inst.bundle, hor, &d, &inst.nabla));
            checks.extend(prefixed(&format!("connection.{name}"), sub));
        }
        if let Some(lb) = self.line() {
            checks.push(lb.curvature_series_check(inst.def.checks.series as i32));
            checks.push(lb.golden_curvature_check());
        }
        checks
    }

    fn torsion(&self) -> Vec<Check> {
        let inst = self.inst;
        let (hor, pairs) = (&inst.hor, &inst.pairs);
        let t = torsion(hor, &inst.nabla);
        let w = t.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| hor.bm.names[i].clone()).collect();
        let mut checks = vec![Check::from_witnesses("torsion.frame.zero", "T^i = nabla(theta_i) = 0", w)];
        checks.extend(verify_torsion(hor, &t));
        checks.push(second_structure_hor(hor, pairs, &inst.nabla));
        let maps = self.vertical_maps();
        for (name, chi) in &maps {
            let d = inst.nabla.add(&vertical_derivation(hor, pairs, chi));
            let mut sub = verify_torsion(hor, &torsion(hor, &d));
            sub.push(second_structure_hor(hor, pairs, &d));
            checks.extend(prefixed(&format!("connection.{name}"), sub));
        }
        let calc = match self.calc() {
            None => return checks,
            Some(Err(e)) => {
                checks.push(Check::fail("calculus.build", "Omega(P) is built from the declared calculus", e));
                return checks;
            }
            Some(Ok(c)) => c,
        };
        checks.extend(verify_delta(calc));
        let few: Vec<NcPoly> = samples_prefix(&self.hor_samples(), 10);
        let zero = CovMap::zero(1, inst.hopf.alg.num_gens());
        let all = std::iter::once(("nabla".to_string(), zero)).chain(maps);
        for (name, chi) in all {
            let prefix = format!("form.{name}");
            let sub = connection_from_chi(inst, calc, &chi).and_then(|w| verify_form(inst, calc, &w, &few));
            match sub {
                Ok(r) => checks.extend(prefixed(&prefix, r.checks)),
                Err(e) => checks.push(Check::fail(
                    format!("{prefix}.descends"),
                    "chi vanishes on R, so omega = omega_nabla + chi is a connection form",
                    e.to_string(),
                )),
            }
        }
        checks
    }

    fn calculus(&self) -> Vec<Check> {
        let inst = self.inst;
        let len = inst.def.checks.confluence_len;
        let calc = match self.calc() {
            None => {
                return vec![Check::skipped("calculus.defined", "a calculus is declared", "no calculus section")];
            }
            Some(Err(e)) => return vec![Check::fail("calculus.build", "Omega(P) is built from the declared calculus", e)],
            Some(Ok(c)) => c,
        };
        let (hor, pairs) = (&inst.hor, &inst.pairs);
        let rho = curvature_extract(hor, pairs, &inst.nabla);
        let maps = [Annihilator { name: "rho".into(), eval: Box::new(|a: &NcPoly| rho.eval(hor, pairs, a)) }];
        let minimal = inst.def.calculus.as_ref().is_some_and(|d| d.minimal);
        let mut checks: Vec<Check> = verify_ideal(&calc.fodc, &maps, calc.fodc.slice_len())
            .into_iter()
            .map(|c| {
                if !minimal && c.name == "calculus.ideal.maximal" {
                    Check::skipped(c.name, c.anchor, "calculus declared non-minimal")
                } else {
                    c
                }
            })
            .collect();
        checks.extend(calc.verify(self.samples, self.seed, len));
        checks.push(confluence("gamma.confluence", &calc.gamma, len));
        checks.push(confluence("wedge.confluence", &calc.wedge, len));
        let zero = CovMap::zero(1, inst.hopf.alg.num_gens());
        match connection_from_chi(inst, calc, &zero) {
            Ok(w) => checks.extend(canonical_form_checks(inst, calc, &w)),
            Err(e) => checks.push(Check::fail("connection_form.canonical", "omega_nabla(t) = t is defined", e.to_string())),
        }
        checks
    }

    fn regularity(&self) -> Vec<Check> {
        let inst = self.inst;
        let space = self.space();
        let expected = inst.def.checks.regular;
        let detail = if space.is_trivial() {
            format!("regular up to length {} ({} candidates)", space.bound, space.candidates)
        } else {
            format!("real dim {} at bound {} ({} candidates)", space.real_dim, space.bound, space.candidates)
        };
        let anchor = "X = {0} exactly when the frame is declared regular";
        let mut checks = vec![match expected {
            None => Check::skipped("regularity.expected", anchor, "no expectation declared"),
            Some(r) if r == space.is_trivial() => Check::pass("regularity.expected", anchor),
            Some(r) => Check::fail("regularity.expected", anchor, format!("declared regular = {r}, real dim {}", space.real_dim)),
        }
        .with_detail(detail)];
        let samples = samples_prefix(&self.hor_samples(), 10);
        let glen = inst.def.checks.group_len;
        for (k, chi) in space.basis.iter().enumerate() {
            let w = verify_chi(&inst.hor, &inst.pairs, chi, &samples, glen)
                .into_iter()
                .filter(|c| c.failed() && ["chi.covariant", "chi.hermitian", "chi.antisymmetric"].contains(&c.name.as_str()))
                .map(|c| c.name)
                .collect();
            checks.push(Check::from_witnesses(
                format!("regularity.basis.x{}", k + 1),
                "chi is covariant, hermitian and k-antisymmetric",
                w,
            ));
        }
        let mut opts = RegularityOptions::new(self.bound);
        opts.sym12 = false;
        let loose = regularity_space(&inst.hor, &inst.pairs, opts);
        let anchor = "dropping sum_j theta_j chi(u_ji) = 0 enlarges X when X = {0}, and never shrinks it";
        let detail = format!("real dim {} without the constraint, {} with it", loose.real_dim, space.real_dim);
        let ok = if space.is_trivial() { loose.real_dim > 0 } else { loose.real_dim >= space.real_dim };
        let c = if ok {
            Check::pass("regularity.sym12_control", anchor)
        } else {
            Check::fail("regularity.sym12_control", anchor, detail.clone())
        };
        checks.push(c.with_detail(detail));
        checks
    }

    fn homogeneous(&self) -> Vec<Check> {
        let inst = self.inst;
        if inst.def.homogeneous.is_none() {
            return vec![Check::skipped("homogeneous.defined", "a homogeneous section is declared", "no homogeneous section")];
        }
        let h = match Homogeneous::build(inst) {
            Ok(h) => h,
            Err(e) => return vec![Check::fail("homogeneous.build", "the homogeneous data is consistent", e.to_string())],
        };
        let calc = self.calc().and_then(|c| c.ok());
        h.verify(inst, calc, inst.def.checks.group_len)
    }
}

fn samples_prefix(s: &[NcPoly], n: usize) -> Vec<NcPoly> {
    s.iter().take(n).cloned().collect()
}

fn canonical_form_checks(inst: &Instance, calc: &Calculus, w: &ConnectionForm) -> Vec<Check> {
    let mut checks = w.verify(calc);
    let mut bad = Vec::new();
    for g in 0..inst.hor.alg.num_gens() as u32 {
        let x = NcPoly::gen(g);
        match w.covariant_derivative(inst, calc, &x) {
            Ok(d) if d == calc.omega.nf(&inst.nabla.apply(&inst.hor.alg, &x)) => {}
            Ok(_) => bad.push(inst.hor.alg.gen_name(g).to_string()),
            Err(e) => bad.push(e.to_string()),
        }
    }
    checks.push(Check::from_witnesses("connection_form.canonical", "D_{omega_nabla} = nabla on hor_P", bad));
    checks
}
