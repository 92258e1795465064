//! Bicovariant *-bimodules given by their left-invariant part: the braiding
//! `τ(η⊗ϑ) = Σ_k ϑ_k ⊗ (η∘c_k)` and the exterior algebra `𝕍^∧ = 𝕍^⊗ / im(I+τ)`.

use crate::error::{Error, Result};
use crate::hopf::{Corep, Hopf};
use crate::linalg::{rref, Matrix, SparseRow};
use crate::ncalg::{check_confluence, check_star_closure, Algebra, GenMap, Generator, NcPoly, Rule, Tensor};
use crate::report::Check;
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct Bimodule {
    pub names: Vec<String>,
    /// `ϰ(θ_i) = Σ_j θ_j ⊗ u_ji`.
    pub corep: Corep,
    /// Per group generator `g`: `θ_j∘g = Σ_i M[j][i] θ_i`.
    pub circ: Vec<Matrix>,
    /// `θ_i* = Σ_j S[i][j] θ_j`.
    pub star: Matrix,
}

impl Bimodule {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn circ_word(&self, w: &[u32]) -> Matrix {
        let mut m = Matrix::identity(self.dim());
        for &g in w {
            m = m.mul(&self.circ[g as usize]);
        }
        m
    }

    /// The matrix of `θ ↦ θ∘a`.
    pub fn circ(&self, a: &NcPoly) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (w, c) in a.terms() {
            m = m.add(&self.circ_word(w).scale(c));
        }
        m
    }

    /// Braiding on `𝕍⊗𝕍` in the basis `θ_a⊗θ_b ↦ a·n + b`, acting on columns.
    pub fn braiding(&self) -> Matrix {
        let n = self.dim();
        let mut tau = Matrix::zeros(n * n, n * n);
        for a in 0..n {
            for b in 0..n {
                for k in 0..n {
                    let m = self.circ(self.corep.entry(k, b));
                    for i in 0..n {
                        let v = m.get(a, i);
                        if !v.is_zero() {
                            let cur = tau.get(k * n + i, a * n + b) + v;
                            tau.set(k * n + i, a * n + b, cur);
                        }
                    }
                }
            }
        }
        tau
    }

    /// Matrix of `x ↦ x∘a` on `𝕍⊗𝕍` (acting on columns), using `(η⊗ϑ)∘a = (η∘a⁽¹⁾)⊗(ϑ∘a⁽²⁾)`.
    fn circ_square(&self, hopf: &Hopf, a: &NcPoly) -> Matrix {
        let n = self.dim();
        let mut out = Matrix::zeros(n * n, n * n);
        for (s, c) in hopf.phi(a).terms() {
            let m1 = self.circ_word(&s[0]);
            let m2 = self.circ_word(&s[1]);
            out = out.add(&m1.kron(&m2).transpose().scale(c));
        }
        out
    }

    pub fn verify(&self, hopf: &Hopf, samples: &[NcPoly]) -> Vec<Check> {
        let alg = &hopf.alg;
        let n = self.dim();
        let mut checks = Vec::new();
        let gens: Vec<NcPoly> = (0..alg.num_gens() as u32).map(NcPoly::gen).collect();
        let mut elems = gens.clone();
        elems.extend(samples.iter().map(|s| alg.nf(s)));

        let mut w = Vec::new();
        for r in alg.rules() {
            if self.circ_word(&r.lhs) != self.circ(&r.rhs) {
                w.push(format!("{} = {}", alg.word_to_string(&r.lhs), alg.fmt(&r.rhs)));
            }
        }
        checks.push(Check::from_witnesses(
            "bimodule.circ.right_action",
            "theta o (ab) = (theta o a) o b, theta o 1 = theta",
            w,
        ));

        // ϰ(θ_i*) = (*⊗*)ϰ(θ_i)
        let mut w = Vec::new();
        for i in 0..n {
            for k in 0..n {
                let mut lhs = NcPoly::zero();
                let mut rhs = NcPoly::zero();
                for j in 0..n {
                    lhs.add_assign(&self.corep.entry(k, j).scale(self.star.get(i, j)));
                    rhs.add_assign(&hopf.star(self.corep.entry(j, i)).scale(self.star.get(j, k)));
                }
                if !alg.nf(&lhs.sub(&rhs)).is_zero() {
                    w.push(self.names[i].to_string());
                }
            }
        }
        w.dedup();
        checks.push(Check::from_witnesses("bimodule.coaction.star", "kappa_V(theta*) = (* (x) *)kappa_V(theta)", w));

        // (ϑ∘a)* = ϑ*∘κ(a)*
        let mut w = Vec::new();
        for a in &elems {
            let lhs = conj_matrix(&self.circ(a)).mul(&self.star);
            let rhs = self.star.mul(&self.circ(&hopf.star(&hopf.kappa(a))));
            if lhs != rhs {
                w.push(alg.fmt(a));
            }
        }
        checks.push(Check::from_witnesses("bimodule.circ.star", "(theta o a)* = theta* o kappa(a)*", w));

        // ϰ(ϑ∘a) = Σ_k (ϑ_k∘a⁽²⁾) ⊗ κ(a⁽¹⁾) c_k a⁽³⁾
        let mut w = Vec::new();
        for a in &elems {
            let m = self.circ(a);
            let s3 = hopf.sweedler(a, 3);
            for j in 0..n {
                let mut ok = true;
                for l in 0..n {
                    let mut lhs = NcPoly::zero();
                    for i in 0..n {
                        lhs.add_assign(&self.corep.entry(l, i).scale(m.get(j, i)));
                    }
                    let mut rhs = NcPoly::zero();
                    for (s, c) in s3.terms() {
                        let m2 = self.circ_word(&s[1]);
                        let left = hopf.kappa(&NcPoly::word(s[0].clone()));
                        for k in 0..n {
                            let coef = m2.get(k, l);
                            if coef.is_zero() {
                                continue;
                            }
                            let prod = alg.mul_all([&left, self.corep.entry(k, j), &NcPoly::word(s[2].clone())]);
                            rhs.add_assign(&prod.scale(&(c * coef)));
                        }
                    }
                    if !alg.nf(&lhs.sub(&rhs)).is_zero() {
                        ok = false;
                    }
                }
                if !ok {
                    w.push(format!("{} o {}", self.names[j], alg.fmt(a)));
                }
            }
        }
        checks.push(Check::from_witnesses(
            "bimodule.coaction.circ",
            "kappa_V(theta o a) = sum_k (theta_k o a(2)) (x) kappa(a(1)) c_k a(3)",
            w,
        ));
        checks.extend(hopf.verify_corep(&self.corep));

        let tau = self.braiding();
        checks.push(braid_check(&tau, n));
        let ker = tau.add(&Matrix::identity(n * n)).kernel().len();
        checks.push(if ker > 0 || n < 2 {
            Check::pass("bimodule.braiding.nontrivial", "ker(I + tau) != 0 when dim V >= 2")
                .with_detail(format!("dim ker(I+tau) = {ker}"))
        } else {
            Check::fail("bimodule.braiding.nontrivial", "ker(I + tau) != 0 when dim V >= 2", "ker(I+tau) = 0")
        });

        // τ commutes with ∘a and with the tensor-square coaction
        let mut w = Vec::new();
        for a in &elems {
            let na = self.circ_square(hopf, a);
            if tau.mul(&na) != na.mul(&tau) {
                w.push(alg.fmt(a));
            }
        }
        checks.push(Check::from_witnesses("bimodule.braiding.circ", "tau((x) o a) = (tau x) o a", w));
        checks.push(self.braiding_coaction_check(hopf, &tau));
        checks
    }

    fn braiding_coaction_check(&self, hopf: &Hopf, tau: &Matrix) -> Check {
        let alg = &hopf.alg;
        let n = self.dim();
        // C[(k,l),(a,b)] = u_ka u_lb
        let entry = |r: usize, c: usize| -> NcPoly {
            let (k, l) = (r / n, r % n);
            let (a, b) = (c / n, c % n);
            alg.mul(self.corep.entry(k, a), self.corep.entry(l, b))
        };
        let mut w = Vec::new();
        for r in 0..n * n {
            for c in 0..n * n {
                let mut lhs = NcPoly::zero();
                let mut rhs = NcPoly::zero();
                for m in 0..n * n {
                    let t1 = tau.get(r, m);
                    if !t1.is_zero() {
                        lhs.add_assign(&entry(m, c).scale(t1));
                    }
                    let t2 = tau.get(m, c);
                    if !t2.is_zero() {
                        rhs.add_assign(&entry(r, m).scale(t2));
                    }
                }
                if !alg.nf(&lhs.sub(&rhs)).is_zero() {
                    w.push(format!("entry ({}, {})", r + 1, c + 1));
                }
            }
        }
        Check::from_witnesses("bimodule.braiding.coaction", "(tau (x) id)kappa_VV = kappa_VV tau", w)
    }

    /// Expresses this bimodule in the basis `θ'_i = Σ_j P[i][j] θ_j`.
    pub fn change_basis(&self, hopf: &Hopf, p: &Matrix, names: Vec<String>) -> Result<Bimodule> {
        let n = self.dim();
        let q = p.inverse().ok_or_else(|| Error::Config("change of basis is not invertible".into()))?;
        let mut entries = vec![vec![NcPoly::zero(); n]; n];
        for (m, row) in entries.iter_mut().enumerate() {
            for (i, e) in row.iter_mut().enumerate() {
                let mut acc = NcPoly::zero();
                for k in 0..n {
                    for j in 0..n {
                        let c = q.get(k, m) * p.get(i, j);
                        if !c.is_zero() {
                            acc.add_assign(&self.corep.entry(k, j).scale(&c));
                        }
                    }
                }
                *e = hopf.alg.nf(&acc);
            }
        }
        Ok(Bimodule {
            names,
            corep: Corep { name: self.corep.name.clone(), entries, unitary: self.corep.unitary },
            circ: self.circ.iter().map(|m| p.mul(m).mul(&q)).collect(),
            star: conj_matrix(p).mul(&self.star).mul(&q),
        })
    }

    /// Builds `𝕍^∧`: degree-2 relations span `im(I+τ)`; each relation rewrites
    /// its largest word. The rewrite system is completed up to degree `dim + 1`.
    pub fn exterior(&self) -> Result<Exterior> {
        self.exterior_to_degree(self.dim() + 1)
    }

    pub fn exterior_to_degree(&self, max_deg: usize) -> Result<Exterior> {
        let n = self.dim();
        let tau = self.braiding();
        let i_tau = tau.add(&Matrix::identity(n * n));
        if n > 1 && i_tau.kernel().is_empty() {
            return Err(Error::TrivialBraidingKernel);
        }
        // columns reversed so that pivots land on the largest words
        let rows: Vec<SparseRow> = (0..n * n)
            .map(|c| {
                (0..n * n)
                    .filter(|&r| !i_tau.get(r, c).is_zero())
                    .map(|r| (n * n - 1 - r, i_tau.get(r, c).clone()))
                    .collect()
            })
            .collect();
        let basis = rref(rows);
        let word = |col: usize| {
            let idx = n * n - 1 - col;
            vec![(idx / n) as u32, (idx % n) as u32]
        };
        let mut rules = Vec::new();
        let mut relations = Vec::new();
        for row in &basis {
            let mut it = row.iter();
            let (&p, _) = it.next().expect("pivot");
            let mut rhs = NcPoly::zero();
            let mut rel = NcPoly::word(word(p));
            for (&c, v) in it {
                rhs.add_term(word(c), -v);
                rel.add_term(word(c), v.clone());
            }
            rules.push(Rule { lhs: word(p), rhs });
            relations.push(rel);
        }
        for d in 3..=max_deg {
            complete_degree(n, d, &relations, &mut rules);
        }
        let gens: Vec<Generator> = (0..n)
            .map(|i| Generator {
                name: self.names[i].clone(),
                degree: 1,
                star: Some(
                    (0..n)
                        .filter(|&j| !self.star.get(i, j).is_zero())
                        .map(|j| (vec![j as u32], self.star.get(i, j).clone()))
                        .collect(),
                ),
            })
            .collect();
        let alg = Algebra::new("exterior", gens, rules)?;
        Ok(Exterior { alg, relations, tau })
    }
}

/// Adds rules for the leading words of degree-`d` ideal elements that the
/// current rules cannot reduce.
fn complete_degree(n: usize, d: usize, relations: &[NcPoly], rules: &mut Vec<Rule>) {
    let size = n.pow(d as u32);
    let index = |w: &[u32]| w.iter().fold(0usize, |acc, &g| acc * n + g as usize);
    let unindex = |mut idx: usize| {
        let mut w = vec![0u32; d];
        for slot in w.iter_mut().rev() {
            *slot = (idx % n) as u32;
            idx /= n;
        }
        w
    };
    let mut rows = Vec::new();
    for rel in relations {
        for left in 0..=d - 2 {
            let right = d - 2 - left;
            for l in 0..n.pow(left as u32) {
                for r in 0..n.pow(right as u32) {
                    let mut row = SparseRow::new();
                    for (w, c) in rel.terms() {
                        let full = l * n.pow((right + 2) as u32) + index(w) * n.pow(right as u32) + r;
                        row.insert(size - 1 - full, c.clone());
                    }
                    rows.push(row);
                }
            }
        }
    }
    let reducible = |w: &[u32], rules: &[Rule]| rules.iter().any(|r| w.windows(r.lhs.len()).any(|x| x == r.lhs.as_slice()));
    for row in rref(rows) {
        let mut it = row.iter();
        let (&p, _) = it.next().expect("pivot");
        let lead = unindex(size - 1 - p);
        if reducible(&lead, rules) {
            continue;
        }
        let rhs = it.map(|(&c, v)| (unindex(size - 1 - c), -v)).collect();
        rules.push(Rule { lhs: lead, rhs });
    }
}

/// `(τ⊗I)(I⊗τ)(τ⊗I) = (I⊗τ)(τ⊗I)(I⊗τ)`.
pub fn braid_check(tau: &Matrix, n: usize) -> Check {
    let id = Matrix::identity(n);
    let t1 = tau.kron(&id);
    let t2 = id.kron(tau);
    let lhs = t1.mul(&t2).mul(&t1);
    let rhs = t2.mul(&t1).mul(&t2);
    if lhs == rhs {
        Check::pass("bimodule.braiding.braid_equation", "(tau (x) I)(I (x) tau)(tau (x) I) = (I (x) tau)(tau (x) I)(I (x) tau)")
    } else {
        Check::fail(
            "bimodule.braiding.braid_equation",
            "(tau (x) I)(I (x) tau)(tau (x) I) = (I (x) tau)(tau (x) I)(I (x) tau)",
            "braid relation residue nonzero",
        )
    }
}

pub fn conj_matrix(m: &Matrix) -> Matrix {
    Matrix { rows: m.rows, cols: m.cols, data: m.data.iter().map(Scalar::conj).collect() }
}

#[derive(Clone, Debug)]
pub struct Exterior {
    pub alg: Algebra,
    /// Degree-2 relations, a basis of `im(I+τ)`.
    pub relations: Vec<NcPoly>,
    pub tau: Matrix,
}

impl Exterior {
    /// Dimensions of the homogeneous components in degrees `0..=max_deg`.
    pub fn dims(&self, max_deg: usize) -> Vec<usize> {
        let mut counts = vec![0usize; max_deg + 1];
        for w in self.alg.normal_words(max_deg) {
            counts[w.len()] += 1;
        }
        counts
    }

    /// Relations as `lhs = rhs` strings.
    pub fn relation_strings(&self) -> Vec<String> {
        self.alg.rules().iter().map(|r| format!("{} = {}", self.alg.word_to_string(&r.lhs), self.alg.fmt(&r.rhs))).collect()
    }

    /// Re-verifies the star, coaction and `∘` structures on the quotient.
    pub fn verify(&self, bm: &Bimodule, hopf: &Hopf, max_len: usize) -> Vec<Check> {
        let mut checks = Vec::new();
        match check_confluence(&self.alg, max_len) {
            Ok(r) => checks.push(Check::from_witnesses(
                "exterior.confluence",
                "overlap ambiguities of the quadratic relations join",
                r.failures().map(|a| a.word.clone()).collect(),
            )),
            Err(e) => checks.push(Check::fail("exterior.confluence", "overlap ambiguities join", e.to_string())),
        }
        match check_star_closure(&self.alg) {
            Ok(w) => checks.push(Check::from_witnesses("exterior.star", "im(I+tau) is star-invariant", w)),
            Err(e) => checks.push(Check::fail("exterior.star", "im(I+tau) is star-invariant", e.to_string())),
        }
        let n = bm.dim();
        let images: Vec<Tensor> = (0..n)
            .map(|i| {
                let mut t = Tensor::zero();
                for j in 0..n {
                    for (w, c) in bm.corep.entry(j, i).terms() {
                        t.add_term(vec![vec![j as u32], w.clone()], c.clone());
                    }
                }
                t
            })
            .collect();
        let kv = GenMap::new(images);
        let res = kv.relation_residues(&self.alg, &[&self.alg, &hopf.alg]);
        checks.push(Check::from_witnesses(
            "exterior.coaction",
            "kappa_V(eta theta) = kappa_V(eta)kappa_V(theta) on relations",
            res.into_iter().map(|(r, d)| format!("{r}: {d}")).collect(),
        ));
        let mut w = Vec::new();
        for g in 0..hopf.alg.num_gens() as u32 {
            let a = NcPoly::gen(g);
            for rel in &self.relations {
                let img = self.circ(bm, hopf, rel, &a);
                if !img.is_zero() {
                    w.push(format!("({}) o {}", self.alg.fmt(rel), hopf.alg.fmt(&a)));
                }
            }
        }
        checks.push(Check::from_witnesses("exterior.circ", "(eta theta) o a = (eta o a(1))(theta o a(2))", w));
        checks
    }

    /// `x∘a` extended multiplicatively, with `1∘a = ε(a)1`.
    pub fn circ(&self, bm: &Bimodule, hopf: &Hopf, x: &NcPoly, a: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in x.terms() {
            let k = w.len().max(1);
            let parts = hopf.sweedler(a, k);
            for (s, d) in parts.terms() {
                if w.is_empty() {
                    out.add_term(Vec::new(), c * &(d * &hopf.eps_word(&s[0])));
                    continue;
                }
                let mut acc = NcPoly::scalar(c * d);
                for (pos, &g) in w.iter().enumerate() {
                    let m = bm.circ_word(&s[pos]);
                    let img: NcPoly = (0..bm.dim())
                        .filter(|&i| !m.get(g as usize, i).is_zero())
                        .map(|i| (vec![i as u32], m.get(g as usize, i).clone()))
                        .collect();
                    acc = acc.concat(&img);
                }
                out.add_assign(&acc);
            }
        }
        self.alg.nf(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::u1;
    use crate::scalar::{intern_param, ParamKind};

    fn lambda() -> Scalar {
        Scalar::param(intern_param("lambda", ParamKind::Real).unwrap())
    }

    fn diag(a: Scalar, b: Scalar) -> Matrix {
        let mut m = Matrix::zeros(2, 2);
        m.set(0, 0, a);
        m.set(1, 1, b);
        m
    }

    fn swap() -> Matrix {
        let mut m = Matrix::zeros(2, 2);
        m.set(0, 1, Scalar::one());
        m.set(1, 0, Scalar::one());
        m
    }

    fn psi_module(l: &Scalar) -> Bimodule {
        Bimodule {
            names: vec!["psi".into(), "psi*".into()],
            corep: Corep {
                name: "V".into(),
                entries: vec![vec![NcPoly::gen(0), NcPoly::zero()], vec![NcPoly::zero(), NcPoly::gen(1)]],
                unitary: true,
            },
            circ: vec![diag(l.clone(), l.clone()), diag(l.inv(), l.inv())],
            star: swap(),
        }
    }

    #[test]
    fn line_bundle_exterior() {
        let h = u1();
        let l = lambda();
        let bm = psi_module(&l);
        for c in bm.verify(&h, &[NcPoly::word(vec![0, 0])]) {
            assert!(c.passed(), "{} {:?}", c.name, c.witness);
        }
        let ext = bm.exterior().unwrap();
        assert_eq!(ext.dims(3), vec![1, 2, 1, 0]);
        let rels = ext.relation_strings();
        assert!(rels.contains(&"psi* psi = -lambda psi psi*".to_string()), "{rels:?}");
        assert!(rels.contains(&"psi^2 = 0".to_string()) || rels.contains(&"psi psi = 0".to_string()), "{rels:?}");
        for c in ext.verify(&bm, &h, 4) {
            assert!(c.passed(), "{} {:?}", c.name, c.witness);
        }
    }

    #[test]
    fn real_basis_agrees() {
        let h = u1();
        let l = lambda();
        let bm = psi_module(&l);
        let half = Scalar::from_ratio(1, 2);
        let ih = &Scalar::i() * &half;
        let mut p = Matrix::zeros(2, 2);
        p.set(0, 0, half.clone());
        p.set(0, 1, half);
        p.set(1, 0, ih.clone());
        p.set(1, 1, -&ih);
        let real = bm.change_basis(&h, &p, vec!["th1".into(), "th2".into()]).unwrap();
        for c in real.verify(&h, &[]) {
            assert!(c.passed(), "{} {:?}", c.name, c.witness);
        }
        let k = p.kron(&p);
        let kt = k.transpose();
        let kti = kt.inverse().unwrap();
        assert_eq!(real.braiding(), kti.mul(&bm.braiding()).mul(&kt));
        assert_eq!(real.exterior().unwrap().dims(3), vec![1, 2, 1, 0]);
    }

    #[test]
    fn symmetric_variant_commutes() {
        let h = u1();
        let minus = Matrix::identity(2).scale(&Scalar::from_int(-1));
        let bm = Bimodule {
            names: vec!["a".into(), "b".into()],
            corep: Corep {
                name: "W".into(),
                entries: vec![vec![NcPoly::gen(0), NcPoly::zero()], vec![NcPoly::zero(), NcPoly::gen(0)]],
                unitary: false,
            },
            circ: vec![minus.clone(), minus],
            star: Matrix::identity(2),
        };
        let _ = &h;
        let ext = bm.exterior().unwrap();
        assert_eq!(ext.relation_strings(), vec!["b a = a b".to_string()]);
        assert_eq!(ext.dims(3), vec![1, 2, 3, 4]);
    }

    #[test]
    fn scaled_braiding_has_trivial_kernel() {
        let two = Scalar::from_int(2);
        let bm = Bimodule {
            names: vec!["a".into(), "b".into()],
            corep: Corep {
                name: "W".into(),
                entries: vec![vec![NcPoly::gen(0), NcPoly::zero()], vec![NcPoly::zero(), NcPoly::gen(0)]],
                unitary: false,
            },
            circ: vec![Matrix::identity(2).scale(&two), Matrix::identity(2).scale(&two.inv())],
            star: Matrix::identity(2),
        };
        assert!(matches!(bm.exterior(), Err(Error::TrivialBraidingKernel)));
    }

    #[test]
    fn one_dimensional_flip_is_accepted() {
        let bm = Bimodule {
            names: vec!["a".into()],
            corep: Corep { name: "1".into(), entries: vec![vec![NcPoly::one()]], unitary: true },
            circ: vec![Matrix::identity(1), Matrix::identity(1)],
            star: Matrix::identity(1).scale(&Scalar::from_int(-1)),
        };
        let ext = bm.exterior().unwrap();
        assert_eq!(ext.relation_strings(), vec!["a^2 = 0".to_string()]);
        assert_eq!(ext.dims(3), vec![1, 1, 0, 0]);
    }
}
