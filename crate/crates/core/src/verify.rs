//! The acceptance battery as a deterministic report.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cohomology;
use crate::dieudonne::{self as dd, DieudonneModule};
use crate::error::{Error, Result};
use crate::fields::{FieldTower, GF};
use crate::hopf::{self, CommFgl, Height, NcFgl};
use crate::linalg;
use crate::ring::{Integers, PrimeField, Ring};
use crate::semilinear::{self as sl, SkewRing};
use crate::tensorops::{self, FgAbelianGroup};
use crate::witt::{vector::oracle, verify_wf_ring_identity, WittRing};

#[derive(Clone, Debug, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub quick: bool,
    pub p: Option<u64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 0, quick: false, p: None }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub value: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Row {
    pub id: u8,
    pub name: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub seed: u64,
    pub quick: bool,
    pub p: Option<u64>,
    pub rows: Vec<Row>,
    pub all_pass: bool,
}

pub const CRITERIA: [&str; 12] = [
    "witt-ghost-oracle",
    "wf-ring-identity",
    "semilinear-splitting",
    "profiniteness",
    "dieudonne-structure",
    "moduli-duality",
    "betti-genfunc",
    "nc-resolution",
    "formal-group-laws",
    "hopf-cartier",
    "form-spaces",
    "determinism",
];

struct RowBuilder {
    checks: Vec<Check>,
}

impl RowBuilder {
    fn new() -> Self {
        RowBuilder { checks: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, pass: bool, value: impl Into<String>) {
        self.checks.push(Check { name: name.into(), pass, value: value.into() });
    }

    fn finish(self, id: u8) -> Row {
        Row { id, name: CRITERIA[id as usize - 1].to_string(), pass: self.checks.iter().all(|c| c.pass), checks: self.checks }
    }
}

fn primes(cfg: &VerifyConfig, default: &[u64]) -> Vec<u64> {
    match cfg.p {
        Some(p) if default.contains(&p) => vec![p],
        _ => default.to_vec(),
    }
}

fn rng_for(cfg: &VerifyConfig, id: u8) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(id as u64))
}

fn c1(cfg: &VerifyConfig) -> Result<Row> {
    let mut rb = RowBuilder::new();
    let mut rng = rng_for(cfg, 1);
    let pairs = if cfg.quick { 20 } else { 100 };
    for p in primes(cfg, &[2, 3, 5]) {
        for r in 1..=3usize {
            let wz = WittRing::new(Integers, p, r)?;
            let wf = WittRing::new(PrimeField::new(p)?, p, r)?;
            let mut bad = 0;
            for _ in 0..pairs {
                let a: Vec<u64> = (0..r).map(|_| rng.gen_range(0..p)).collect();
                let b: Vec<u64> = (0..r).map(|_| rng.gen_range(0..p)).collect();
                let (la, lb): (Vec<BigInt>, Vec<BigInt>) = (a.iter().map(|&x| BigInt::from(x)).collect(), b.iter().map(|&x| BigInt::from(x)).collect());
                let (va, vb) = (wz.vector(la.clone())?, wz.vector(lb.clone())?);
                let (ga, gb) = (oracle::ghost(p, &la), oracle::ghost(p, &lb));
                let s = wz.add(&va, &vb)?;
                let m = wz.mul(&va, &vb)?;
                let gs = oracle::ghost(p, &s.components);
                let gm = oracle::ghost(p, &m.components);
                let ghost_ok = (0..r).all(|i| gs[i] == &ga[i] + &gb[i] && gm[i] == &ga[i] * &gb[i]);
                let (fa, fb) = (wf.vector(a.clone())?, wf.vector(b.clone())?);
                let fp_ok = wf.add(&fa, &fb)?.components == oracle::add_fp(p, &a, &b) && wf.mul(&fa, &fb)?.components == oracle::mul_fp(p, &a, &b);
                if !(ghost_ok && fp_ok) {
                    bad += 1;
                }
            }
            rb.check(format!("p={p} r={r}"), bad == 0, format!("{pairs} pairs, {bad} mismatches"));
        }
    }
    Ok(rb.finish(1))
}

fn c2(cfg: &VerifyConfig) -> Result<Row> {
    let mut rb = RowBuilder::new();
    for (p, r) in [(2u64, 2usize), (2, 3), (3, 2), (5, 2)] {
        if cfg.p.is_some_and(|q| q != p) && [2, 3, 5].contains(&cfg.p.unwrap()) {
            continue;
        }
        let rep = verify_wf_ring_identity(p, r)?;
        rb.check(format!("(p,r)=({p},{r})"), rep.pass, format!("product = ({})", rep.product.join(", ")));
    }
    Ok(rb.finish(2))
}

fn operator_checks(t: &sl::SemilinearOperator) -> Result<(bool, bool, bool, bool, bool)> {
    let f = t.field();
    let d = t.dim();
    let s = t.ss_nilpotent_split();
    let dims = s.vs.len() + s.vn.len() == d && {
        let mut all = s.vs.clone();
        all.extend(s.vn.iter().cloned());
        d == 0 || linalg::rank(&*f, &all) == d
    };
    let bij = s.vs.is_empty() || {
        let imgs: Vec<_> = s.vs.iter().map(|v| t.apply(v)).collect();
        let mut both = s.vs.clone();
        both.extend(imgs.iter().cloned());
        linalg::rank(&*f, &imgs) == s.vs.len() && linalg::rank(&*f, &both) == s.vs.len()
    };
    let nil = s.vn.iter().all(|v| {
        let mut w = v.clone();
        for _ in 0..s.n.max(d) {
            w = t.apply(&w);
        }
        w.iter().all(|x| f.is_zero(x))
    });
    let fixed = t.fixed_space()?;
    let tilt = t.tilt_and_perfection()?;
    Ok((dims, bij, nil, fixed.stabilized_dim == fixed.dim_vs, tilt.is_isomorphism))
}

fn c3(cfg: &VerifyConfig) -> Result<Row> {
    let mut rb = RowBuilder::new();
    let mut rng = rng_for(cfg, 3);
    let total = if cfg.quick { 20 } else { 100 };
    let ps = primes(cfg, &[2, 3]);
    let towers: Vec<Arc<FieldTower>> = ps.iter().map(|&p| FieldTower::new(p).map(Arc::new)).collect::<Result<_>>()?;
    let (mut ok, mut rejected) = ([0usize; 5], 0usize);
    let mut done = 0;
    while done < total {
        let tower = &towers[done % towers.len()];
        let m = rng.gen_range(1..=2usize);
        let lvl = tower.level_containing(m)?;
        let d = rng.gen_range(1..=6usize);
        let t = sl::random_operator(tower.clone(), lvl, d, &mut rng)?;
        match operator_checks(&t) {
            Ok(c) => {
                for (slot, v) in ok.iter_mut().zip([c.0, c.1, c.2, c.3, c.4]) {
                    *slot += usize::from(v);
                }
                done += 1;
            }
            Err(Error::CapExceeded(_)) => rejected += 1,
            Err(e) => return Err(e),
        }
    }
    let names = ["dim V_s + dim V_n = d", "F bijective on V_s", "F nilpotent on V_n", "stabilized fixed dim = dim V_s", "tilt composite iso"];
    for (n, c) in names.iter().zip(ok) {
        rb.check(*n, c == total, format!("{c}/{total}"));
    }
    rb.check("rejected draws (tower cap)", true, rejected.to_string());
    Ok(rb.finish(3))
}

fn c4(cfg: &VerifyConfig) -> Result<Row> {
    let mut rb = RowBuilder::new();
    let p = primes(cfg, &[3])[0];
    let f = Arc::new(GF::new(p, 2)?);
    for (name, want) in [("G_a", false), ("alpha_p", true), ("alpha_p^2", true), ("Z/p", true), ("W_2", true), ("W_2[F]", true)] {
        let got = sl::is_profinite(&sl::hom_module_preset(name, f.clone())?);
        rb.check(format!("{name} profinite = {want}"), got == want, got.to_string());
    }
    let mut rng = rng_for(cfg, 4);
    let r = SkewRing::new(f.clone());
    let n = if cfg.quick { 40 } else { 200 };
    let mut bad = 0;
    for _ in 0..n {
        let a = r.trim((0..rng.gen_range(0..7)).map(|_| f.random(&mut rng)).collect());
        let mut b = r.trim((0..rng.gen_range(1..5)).map(|_| f.random(&mut rng)).collect());
        if b.is_empty() {
            b = r.constant(f.one());
        }
        let db = r.degree(&b).unwrap_or(0);
        let (q, rem) = r.right_divrem(&a, &b)?;
        let ok_r = r.add(&r.mul(&q, &b), &rem) == a && r.degree(&rem).is_none_or(|d| d < db);
        let (q, rem) = r.left_divrem(&a, &b)?;
        let ok_l = r.add(&r.mul(&b, &q), &rem) == a && r.degree(&rem).is_none_or(|d| d < db);
        if !(ok_r && ok_l) {
            bad += 1;
        }
    }
    rb.check("skew division f = qg + r, deg r < deg g", bad == 0, format!("{n} pairs, {bad} failures"));
    Ok(rb.finish(4))
}

fn c5(cfg: &VerifyConfig) -> Result<Row> {
    let mut rb = RowBuilder::new();
    let mut rng = rng_for(cfg, 5);
    for p in primes(cfg, &[2, 3, 5]) {
        let mut rel = true;
        let mut dims = true;
        let mut dual = true;
        for r in 1..=3u32 {
            let gr = dd::galois_ring(p, 3, r)?;
            let d12 = DieudonneModule::dmn(1, 2, gr.clone())?;
            let d21 = DieudonneModule::dmn(2, 1, gr.clone())?;
            rel &= d12.check_relations().is_ok() && d21.check_relations().is_ok();
            dims &= d12.dimension() == 2 && d21.dimension() == 1;
            if r <= 2 || !cfg.quick {
                dual &= match dd::find_isomorphism(&d12.dual(), &d21, 50, &mut rng)? {
                    Some(t) => dd::is_morphism(&d12.dual(), &d21, &t) && dd::is_invertible(&gr, &t),
                    None => false,
                };
            }
        }
        rb.check(format!("p={p} FV = VF = p, r ≤ 3"), rel, rel.to_string());
        rb.check(format!("p={p} dim D12 = 2, dim D21 = 1"), dims, dims.to_string());
        rb.check(format!("p={p} dual(D12) ≅ D21 certificate"), dual, dual.to_string());
    }
    for p in primes(cfg, &[2, 3]) {
        let gr = dd::galois_ring(p, 3, 2)?;
        let hs = dd::hom_space(&DieudonneModule::dmn(1, 2, gr.clone())?, &DieudonneModule::dmn(2, 1, gr)?, true)?;
        rb.check(format!("p={p} strict Hom(D12, D21) = 0"), hs.is_zero(), format!("length {}", hs.length));
    }
    Ok(rb.finish(5))
}

fn c6(cfg: &VerifyConfig) -> Result<Row> {
    let mut rb = RowBuilder::new();
    let mut rng = rng_for(cfg, 6);
    let run3 = cfg.p.is_none_or(|p| p != 2);
    let run2 = cfg.p.is_none_or(|p| p != 3);
    if run3 {
        let gr = dd::galois_ring(3, 6, 2)?;
        let k = gr.residue().clone();
        let units = dd::cubic_units(&k)?;
        let n = if cfg.quick { 8 } else { 20 };
        let mut pts: Vec<(Vec<u64>, Vec<u64>)> = Vec::new();
        while pts.len() < n {
            if pts.len() % 2 == 1 {
                // scale an earlier point by c and an F_{p^3}^× factor
                let (x1, x2) = pts[rng.gen_range(0..pts.len())].clone();
                let c = loop {
                    let c = k.random(&mut rng);
                    if !k.is_zero(&c) {
                        break c;
                    }
                };
                let lam = &units[rng.gen_range(0..units.len())];
                pts.push((k.mul(&c, &x1), k.mul(&c, &k.mul(lam, &x2))));
            } else {
                let x1 = k.random(&mut rng);
                let x2 = k.random(&mut rng);
                if !k.is_zero(&x1) && !k.is_zero(&x2) {
                    pts.push((x1, x2));
                }
            }
        }
        let zs: Vec<Vec<u64>> = pts.iter().map(|(a, b)| dd::moduli_class(a, b, &k).map(|m| m.z)).collect::<Result<_>>()?;
        let mut agree = 0;
        let mut pairs = 0;
        let mut certified = true;
        for i in 0..n {
            for j in i + 1..n {
                let t = dd::iso_test((&pts[i].0, &pts[i].1), (&pts[j].0, &pts[j].1), gr.clone(), false)?;
                pairs += 1;
                if t.isomorphic == (zs[i] == zs[j]) {
                    agree += 1;
                }
                if t.isomorphic && !t.map_verified {
                    certified = false;
                }
            }
        }
        let mut classes = zs.clone();
        classes.sort();
        classes.dedup();
        rb.check("iso classes = z-classes (p=3, F_3^6)", agree == pairs && certified, format!("{agree}/{pairs} pairs agree, {} classes", classes.len()));
        let mut inv_ok = 0;
        let mut cert_ok = 0;
        for (x1, x2) in &pts {
            let c = dd::duality_involution_check(x1, x2, gr.clone())?;
            inv_ok += usize::from(c.matches_expected);
            cert_ok += usize::from(c.certificate_verified);
        }
        rb.check("dual certificates verified", cert_ok == n, format!("{cert_ok}/{n}"));
        rb.check("duality sends z to (−1)^(p−1)/z", inv_ok == n, format!("{inv_ok}/{n} points"));
        let census = dd::non_self_dual_census(3, 6, 2)?;
        rb.check(
            "p=3 self-dual classes = 2",
            census.computed_self_dual == 2,
            format!("computed {} of {}, formula z² = 1 gives {}", census.computed_self_dual, census.total_classes, census.formula_self_dual),
        );
        // a point the formula calls non-self-dual, tested against its certified dual
        let witness = census.rows.iter().find(|r| !r.formula_self_dual);
        match witness {
            Some(row) => {
                let one = k.one();
                let neg = k.neg(&row.w);
                let t = dd::iso_test((&one, &row.w), (&one, &neg), gr.clone(), false)?;
                rb.check(
                    "non-self-dual witness (search over F_27^× fails)",
                    !t.isomorphic,
                    format!("w = {:?}: M ≅ dual(M) found after {} candidates", row.w, t.candidates_searched),
                );
            }
            None => rb.check("non-self-dual witness (search over F_27^× fails)", false, "no candidate"),
        }
    }
    if run2 {
        let census = dd::non_self_dual_census(2, 6, 2)?;
        rb.check(
            "p=2 self-dual classes = 1",
            census.computed_self_dual == 1,
            format!("computed {} of {}, formula z² = 1 gives {}", census.computed_self_dual, census.total_classes, census.formula_self_dual),
        );
    }
    Ok(rb.finish(6))
}

fn c7(cfg: &VerifyConfig) -> Result<Row> {
    let mut rb = RowBuilder::new();
    let d = if cfg.quick { 6 } else { 8 };
    for p in primes(cfg, &[2, 3]) {
        for name in cohomology::PRESETS {
            let a = cohomology::preset(name, p)?;
            let rep = cohomology::verify_genfunc(&a, d, None)?;
            let e = cohomology::verify_ext1_formula(&a)?;
            let b: Vec<String> = rep.computed.iter().map(|x| x.to_string()).collect();
            rb.check(format!("p={p} {}", a.name), rep.pass() && e.pass, format!("b = ({}), b2 = {} = C({},2)+{}", b.join(","), e.b2, e.g, e.s));
        }
    }
    Ok(rb.finish(7))
}

fn c8(_cfg: &VerifyConfig) -> Result<Row> {
    let mut rb = RowBuilder::new();
    for g in 1..=3 {
        let mut ok = true;
        for d in 1..=6 {
            let r = cohomology::nc_resolution_oracle(g, d)?;
            let mut want = vec![1, g];
            want.extend(std::iter::repeat(0).take(d - 1));
            ok &= r.exact && r.ext_dims == want;
        }
        rb.check(format!("g={g}, D ≤ 6"), ok, format!("Ext dims (1, {g}, 0, …)"));
    }
    Ok(rb.finish(8))
}

fn c9(cfg: &VerifyConfig) -> Result<Row> {
    let mut rb = RowBuilder::new();
    let ps = primes(cfg, &[2, 3]);
    for &p in &ps {
        let a = CommFgl::additive(p, 12)?;
        let m = CommFgl::multiplicative(p, 12)?;
        rb.check(format!("p={p} axioms x+y, x+y+xy"), a.check().pass() && m.check().pass(), "pass");
        let hm = m.height()?;
        rb.check(format!("p={p} height(x+y+xy) = 1"), hm == Height::Exact(1), hm.to_string());
        let ha = a.height()?;
        rb.check(format!("p={p} height(x+y) unbounded"), matches!(ha, Height::AtLeast(_)), ha.to_string());
        for g in 1..=3 {
            let f = NcFgl::multiplicative(g, 6, p)?;
            rb.check(format!("p={p} non-commutative g={g} D=6"), f.check().pass(), "X_i + Y_i + X_i Y_i");
        }
        for h in 1..=3u32 {
            let d = (p.pow(h) as usize + 1).max(6);
            let lt = hopf::lubin_tate(p, h, d, 1)?;
            let ht = lt.height()?;
            rb.check(format!("p={p} Lubin–Tate h={h} (D={d})"), lt.check().pass() && ht == Height::Exact(h), ht.to_string());
        }
    }
    let mut rng = rng_for(cfg, 9);
    let n = if cfg.quick { 5 } else { 20 };
    for &p in &ps {
        for f in [CommFgl::multiplicative(p, 12)?, hopf::lubin_tate(p, 2, 12, 1)?] {
            let h = f.height()?;
            let mut same = 0;
            for _ in 0..n {
                let mut phi = vec![0u64; 13];
                phi[1] = 1;
                for c in phi.iter_mut().skip(2) {
                    *c = rng.gen_range(0..p);
                }
                let g = f.coordinate_change(&phi)?;
                if g.check().pass() && g.height()? == h {
                    same += 1;
                }
            }
            rb.check(format!("p={p} height {h} invariant under coordinate changes"), same == n, format!("{same}/{n}"));
        }
    }
    Ok(rb.finish(9))
}

fn c10(cfg: &VerifyConfig) -> Result<Row> {
    let mut rb = RowBuilder::new();
    for p in primes(cfg, &[2, 3, 5]) {
        let mut all: Vec<hopf::FiniteHopfAlgebra> = vec![hopf::alpha(p, 1, 1)?, hopf::alpha(p, 2, 1)?, hopf::mu_p(p, 1)?, hopf::constant_zp(p, 1)?];
        for r in 1..=3usize {
            if p.pow(r as u32) <= 32 {
                all.push(hopf::witt_frobenius_kernel(p, r, 1)?);
            }
        }
        let mut axioms = true;
        let mut bidual = true;
        let mut names = Vec::new();
        for h in &all {
            axioms &= h.check_axioms().pass();
            let d = hopf::cartier_dual(h)?;
            axioms &= d.check_axioms().pass();
            let dd = hopf::cartier_dual(&d)?;
            bidual &= dd.mult == h.mult && dd.comult == h.comult && dd.unit == h.unit && dd.counit == h.counit && dd.antipode == h.antipode;
            names.push(h.name.clone());
        }
        rb.check(format!("p={p} Hopf axioms"), axioms, names.join(", "));
        let a = hopf::alpha(p, 1, 1)?;
        let da = hopf::cartier_dual(&a)?;
        let self_dual = hopf::find_hopf_iso(&a, &da)?.is_some_and(|t| hopf::is_hopf_iso(&a, &da, &t));
        rb.check(format!("p={p} alpha_p self-dual"), self_dual, self_dual.to_string());
        let z = hopf::constant_zp(p, 1)?;
        let dz = hopf::cartier_dual(&z)?;
        let mu = hopf::mu_p(p, 1)?;
        let zmu = hopf::find_hopf_iso(&dz, &mu)?.is_some_and(|t| hopf::is_hopf_iso(&dz, &mu, &t));
        rb.check(format!("p={p} (Z/p)^∨ ≅ mu_p"), zmu, zmu.to_string());
        rb.check(format!("p={p} double dual = identity"), bidual, bidual.to_string());
    }
    Ok(rb.finish(10))
}

fn c11(cfg: &VerifyConfig) -> Result<Row> {
    let mut rb = RowBuilder::new();
    for p in primes(cfg, &[2, 3, 5]) {
        let a = hopf::alpha(p, 1, 1)?;
        let d = tensorops::form_dims(&a, &a)?;
        let got = (d.bilinear, d.alternating.unwrap_or(0), d.weak_alternating.unwrap_or(0));
        let want = if p == 2 { (1, 1, 1) } else { (1, 0, 0) };
        rb.check(format!("p={p} alpha_p x alpha_p (bil, alt, weak)"), got == want, format!("{got:?}"));
    }
    for (p, r) in [(2u64, 2usize), (2, 3), (3, 2), (5, 2)] {
        if cfg.p.is_some_and(|q| q != p && [2, 3, 5].contains(&q)) {
            continue;
        }
        let rep = tensorops::wf_identification(p, r)?;
        rb.check(format!("wf identification ({p},{r})"), rep.pass, format!("pairing rank {}", rep.pairing_rank));
    }
    let zz = tensorops::weak_wedge_abelian(&FgAbelianGroup::new(&[0]));
    rb.check("Z ⋏ Z = Z/2", zz.factors == vec![2], zz.to_string());
    let mut rng = rng_for(cfg, 11);
    let n = if cfg.quick { 5 } else { 20 };
    let mut ok = 0;
    for _ in 0..n {
        let k = rng.gen_range(1..=4);
        let orders: Vec<u64> = (0..k).map(|_| [0u64, 2, 3, 4, 5, 6, 8, 9, 12][rng.gen_range(0..9)]).collect();
        ok += usize::from(tensorops::whitehead_symmetrization(&FgAbelianGroup::new(&orders)).agrees);
    }
    rb.check("whitehead cokernel = weak wedge", ok == n, format!("{ok}/{n} groups"));
    Ok(rb.finish(11))
}

/// One acceptance row (1..=11).
pub fn criterion(id: u8, cfg: &VerifyConfig) -> Result<Row> {
    match id {
        1 => c1(cfg),
        2 => c2(cfg),
        3 => c3(cfg),
        4 => c4(cfg),
        5 => c5(cfg),
        6 => c6(cfg),
        7 => c7(cfg),
        8 => c8(cfg),
        9 => c9(cfg),
        10 => c10(cfg),
        11 => c11(cfg),
        _ => Err(Error::InvalidInput(format!("no criterion {id}"))),
    }
}

fn rows(cfg: &VerifyConfig) -> Result<Vec<Row>> {
    (1..=11).map(|i| criterion(i, cfg)).collect()
}

pub fn verify_paper(cfg: &VerifyConfig) -> Result<Report> {
    let first = rows(cfg)?;
    let second = rows(cfg)?;
    let a = serde_json::to_string(&first).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let b = serde_json::to_string(&second).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let mut rb = RowBuilder::new();
    rb.check("two runs with the same seed", a == b, format!("{} bytes", a.len()));
    let mut all = first;
    all.push(rb.finish(12));
    let all_pass = all.iter().all(|r| r.pass);
    Ok(Report { seed: cfg.seed, quick: cfg.quick, p: cfg.p, rows: all, all_pass })
}

impl Report {
    pub fn to_table(&self) -> String {
        let mut out = format!("verify-paper seed={} quick={} p={}\n", self.seed, self.quick, self.p.map_or("all".into(), |p| p.to_string()));
        for r in &self.rows {
            out.push_str(&format!("{:>3}  {:<22} {}\n", r.id, r.name, if r.pass { "PASS" } else { "FAIL" }));
            for c in &r.checks {
                out.push_str(&format!("       {} {:<52} {}\n", if c.pass { "ok " } else { "BAD" }, c.name, c.value));
            }
        }
        let passed = self.rows.iter().filter(|r| r.pass).count();
        out.push_str(&format!("{passed}/{} criteria pass\n", self.rows.len()));
        out
    }
}
