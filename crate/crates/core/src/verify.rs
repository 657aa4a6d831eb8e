//! The verification battery: exhaustive identity checks and oracle cross-checks,
//! grouped into numbered criteria.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::Result;
use crate::forms::{invariants, is_anisotropic, FormSpec, FormType, Model, SpaceKind};
use crate::kudla::{
    anti_split_tower_u, case3_kernel_lattice, coefficient_systems, cw_u_group, kernel_report,
    w_inf_group, weil_character_failures, weil_gg_check, ArchCase, PsiConvention,
};
use crate::localfield::CoefficientSystem;
use crate::localfield::{hilbert, DivisionKind, LocalField, SquareClass};
use crate::oracle::{hilbert_oracle, quadratic_isotropic};
use crate::theta::{
    arch_case3_check, case3_generator, conserve_predict, dichotomy_partner, n_trivial_antisplit,
    Case3Assignment, OccurrenceQuery, VerdictStatus,
};
use crate::witt::{check_conserv0, tower_group, WittTower};

#[derive(Clone, Debug, Default)]
pub struct Criterion {
    pub id: u8,
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
    /// Inputs outside the tabulated range, reported but not counted.
    pub skipped: Vec<String>,
}

impl Criterion {
    fn new(id: u8, name: &str) -> Criterion {
        Criterion {
            id,
            name: name.into(),
            ..Default::default()
        }
    }

    fn assert(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn error(&mut self, what: String) {
        self.checked += 1;
        self.failures.push(what);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && (self.checked > 0 || !self.skipped.is_empty())
    }

    /// One line: `[PASS] 3 name (n checks)`.
    pub fn line(&self) -> String {
        let mut s = format!(
            "[{}] {:>2} {} ({} checks",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.checked
        );
        if !self.failures.is_empty() {
            s.push_str(&format!(
                ", {} failures; first: {}",
                self.failures.len(),
                self.failures[0]
            ));
        }
        s.push(')');
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "name": self.name,
            "checked": self.checked,
            "failures": self.failures,
            "skipped": self.skipped,
            "passed": self.passed(),
        })
    }
}

pub fn padic(p: u64) -> LocalField {
    LocalField::padic(p).expect("prime")
}

pub fn d_table() -> Criterion {
    let mut c = Criterion::new(1, "d_max table");
    let expected = [
        (SpaceKind::Symplectic, 0),
        (SpaceKind::QuatHermitian, 1),
        (SpaceKind::Hermitian, 2),
        (SpaceKind::SkewHermitian, 2),
        (SpaceKind::QuatSkewHermitian, 3),
        (SpaceKind::Symmetric, 4),
    ];
    for (k, d) in expected {
        c.assert(k.d_max() == d, || format!("{k}: {} != {d}", k.d_max()));
        for f in [padic(2), padic(3), padic(5), padic(7)] {
            for ty in FormType::all(f).into_iter().filter(|t| t.kind == k) {
                c.assert(ty.d_max() == d, || {
                    format!("{}: {}", ty.label(), ty.d_max())
                });
                match tower_group(ty, None) {
                    Ok(tg) => {
                        let top = tg.towers.iter().map(WittTower::deg).max().unwrap_or(-1);
                        c.assert(top == d, || {
                            format!("{}: largest anisotropic degree {top} != {d}", ty.label())
                        });
                    }
                    Err(e) => c.error(format!("{}: {e}", ty.label())),
                }
            }
        }
    }
    c
}

fn types_of(fields: &[LocalField], filter: Option<SpaceKind>) -> Vec<FormType> {
    fields
        .iter()
        .flat_map(|f| FormType::all(*f))
        .filter(|t| filter.is_none_or(|k| t.kind == k))
        .collect()
}

pub fn conserv0(fields: &[LocalField], filter: Option<SpaceKind>) -> Criterion {
    let mut c = Criterion::new(2, "Witt-group conservation deg t1 + deg t2 = d");
    for ty in types_of(fields, filter) {
        if ty.model() == Model::Signature {
            c.skipped
                .push(format!("{}: infinite tower group", ty.label()));
            continue;
        }
        match check_conserv0(ty) {
            Ok(r) => {
                c.checked += r.pairs.len();
                c.failures
                    .extend(r.failures.iter().map(|f| format!("{}: {f}", ty.label())));
            }
            Err(e) => c.error(format!("{}: {e}", ty.label())),
        }
    }
    c
}

pub fn cw0_orders(fields: &[LocalField], filter: Option<SpaceKind>) -> Criterion {
    let mut c = Criterion::new(3, "|CW_0| by quotient equals anisotropic class count");
    for ty in types_of(fields, filter) {
        if ty.model() == Model::Signature {
            c.skipped
                .push(format!("{}: infinite tower group", ty.label()));
            continue;
        }
        // tower_group itself rejects a count mismatch.
        match tower_group(ty, None) {
            Ok(tg) => {
                let n = tg.order();
                c.assert(n == Some(tg.towers.len() as u64), || {
                    format!("{}: {n:?} vs {}", ty.label(), tg.towers.len())
                });
                let odd = ty.field.prime().is_some_and(|p| p != 2);
                let expected = match ty.kind {
                    SpaceKind::Symmetric if odd => Some(16),
                    SpaceKind::Hermitian | SpaceKind::SkewHermitian
                        if ty.model() == Model::Witt =>
                    {
                        Some(4)
                    }
                    SpaceKind::Symplectic => Some(1),
                    _ => None,
                };
                if let Some(e) = expected {
                    c.assert(n == Some(e), || {
                        format!("{}: order {n:?}, expected {e}", ty.label())
                    });
                }
            }
            Err(e) => c.error(format!("{}: {e}", ty.label())),
        }
    }
    c
}

pub fn hilbert_symbols(fields: &[LocalField]) -> Criterion {
    let mut c = Criterion::new(4, "Hilbert symbol against the oracle");
    for &f in fields {
        let classes = f.square_classes();
        let h = |a: SquareClass, b: SquareClass| hilbert(a, b);
        for &a in &classes {
            for &b in &classes {
                match hilbert_oracle(f, a.representative(), b.representative()) {
                    Ok(o) => c.assert(o == h(a, b), || {
                        format!(
                            "{}: ({}, {}) table {} oracle {o}",
                            f.name(),
                            a.label(),
                            b.label(),
                            h(a, b)
                        )
                    }),
                    Err(e) => c.error(format!(
                        "{}: oracle ({}, {}): {e}",
                        f.name(),
                        a.label(),
                        b.label()
                    )),
                }
                c.assert(h(a, b) == h(b, a), || {
                    format!("{}: symmetry at ({}, {})", f.name(), a.label(), b.label())
                });
                for &b2 in &classes {
                    c.assert(h(a, b.mul(&b2)) == h(a, b) * h(a, b2), || {
                        format!(
                            "{}: multiplicativity at ({}, {}, {})",
                            f.name(),
                            a.label(),
                            b.label(),
                            b2.label()
                        )
                    });
                }
            }
            c.assert(h(a, a.mul(&f.minus_one())) == 1, || {
                format!("{}: (a, -a) != 1 for {}", f.name(), a.label())
            });
            if !a.is_one() {
                c.assert(classes.iter().any(|&b| h(a, b) == -1), || {
                    format!("{}: {} pairs trivially", f.name(), a.label())
                });
            }
        }
    }
    c
}

fn multisets(items: &[i64], size: usize) -> Vec<Vec<i64>> {
    if size == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in multisets(&items[i..], size - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

pub fn anisotropy(primes: &[u64], max_dim: usize) -> Criterion {
    let mut c = Criterion::new(5, "anisotropy rules against Hensel-certified search");
    for &p in primes {
        let f = padic(p);
        let ty = FormType::new(SpaceKind::Symmetric, f, None).expect("symmetric type");
        let reps: Vec<i64> = f
            .square_classes()
            .iter()
            .map(SquareClass::representative)
            .collect();
        for n in 1..=max_dim {
            for diag in multisets(&reps, n) {
                let rule = FormSpec::diagonal(ty, diag.clone())
                    .and_then(|s| invariants(&s))
                    .and_then(|cl| is_anisotropic(&cl));
                match (rule, quadratic_isotropic(f, &diag)) {
                    (Ok(a), Ok(iso)) => c.assert(a != iso, || {
                        format!("Q_{p} {diag:?}: rule anisotropic={a}, search isotropic={iso}")
                    }),
                    (Err(e), _) | (_, Err(e)) => c.error(format!("Q_{p} {diag:?}: {e}")),
                }
            }
        }
    }
    c
}

pub fn weil_indices(fields: &[LocalField]) -> Criterion {
    let mut c = Criterion::new(6, "Weil index is a character and rescales correctly");
    for &f in fields {
        let psi = PsiConvention::standard(f);
        match weil_character_failures(&psi) {
            Ok(fails) => {
                let n = crate::localfield::hil_elements(f).len();
                c.checked += n * n;
                c.failures
                    .extend(fails.into_iter().map(|x| format!("{}: {x}", f.name())));
            }
            Err(crate::Error::UnsupportedField(m)) => {
                c.skipped.push(m);
                continue;
            }
            Err(e) => c.error(format!("{}: {e}", f.name())),
        }
        for alpha in f.square_classes() {
            match weil_gg_check(&psi, alpha) {
                Ok(r) => c.assert(r.passed(), || {
                    format!(
                        "{}: rescaling by {}: {}",
                        f.name(),
                        alpha.label(),
                        r.to_json()
                    )
                }),
                Err(e) => c.error(format!("{}: {e}", f.name())),
            }
        }
    }
    c
}

pub fn kudla_kernels(fields: &[LocalField]) -> Criterion {
    let mut c = Criterion::new(
        7,
        "Kudla homomorphism onto K^* with kernel of order 2 and degree d",
    );
    for &f in fields {
        for cs in coefficient_systems(f) {
            let label = cs.to_json().to_string();
            let eg = match w_inf_group(&cs) {
                Ok(eg) => eg,
                Err(crate::Error::UnsupportedField(m)) => {
                    c.skipped.push(m);
                    continue;
                }
                Err(e) => {
                    c.error(format!("{label}: {e}"));
                    continue;
                }
            };
            let r = match kernel_report(&eg) {
                Ok(r) => r,
                Err(e) => {
                    c.error(format!("{label}: {e}"));
                    continue;
                }
            };
            c.assert(r.surjective, || format!("{label}: not surjective"));
            c.assert(r.hyperbolic_in_kernel, || {
                format!("{label}: xi(H) nontrivial")
            });
            let case = f
                .is_archimedean()
                .then(|| ArchCase::of(eg.u_kind, f).ok())
                .flatten();
            let expected_deg = match case {
                None => Some(eg.v_type.d_max()),
                Some(ArchCase::One) => Some(0),
                Some(_) => None,
            };
            if let Some(d) = expected_deg {
                c.assert(r.kernel_order == Some(2), || {
                    format!("{label}: kernel order {:?}", r.kernel_order)
                });
                match anti_split_tower_u(&eg, &eg.psi) {
                    Ok(t) => c.assert(t.tower().deg() == d, || {
                        format!("{label}: anti-split degree {} != {d}", t.tower().deg())
                    }),
                    Err(e) => c.error(format!("{label}: {e}")),
                }
            }
        }
    }
    c
}

pub fn real_symplectic_kernel() -> Criterion {
    let mut c = Criterion::new(8, "real symplectic kernel is {a w+ + b w- : a - b in 4Z}");
    let run = || -> Result<crate::kudla::LatticeReport> {
        let cs = CoefficientSystem::new(LocalField::Real, DivisionKind::Field, -1)?;
        case3_kernel_lattice(&w_inf_group(&cs)?)
    };
    match run() {
        Ok(r) => {
            c.assert(r.d == 4, || format!("d = {}", r.d));
            c.assert(r.equal, || format!("kernel generators {:?}", r.kernel));
            c.assert(r.index == Some(4), || format!("index {:?}", r.index));
        }
        Err(e) => c.error(e.to_string()),
    }
    c
}

pub fn cw_u_orders(fields: &[LocalField]) -> Criterion {
    let mut c = Criterion::new(9, "|CW_U| = |G(U)^*| |CW_0|");
    for &f in fields {
        for cs in coefficient_systems(f) {
            let label = cs.to_json().to_string();
            let eg = match w_inf_group(&cs) {
                Ok(eg) => eg,
                Err(crate::Error::UnsupportedField(m)) => {
                    c.skipped.push(m);
                    continue;
                }
                Err(e) => {
                    c.error(format!("{label}: {e}"));
                    continue;
                }
            };
            for dim_u in [0, 2, 4] {
                match cw_u_group(&eg, dim_u, false) {
                    Ok(r) => c.assert(r.passed(), || {
                        format!("{label} dim U {dim_u}: {:?}", r.failures)
                    }),
                    Err(e) => c.error(format!("{label} dim U {dim_u}: {e}")),
                }
            }
        }
        if f == padic(3) {
            for (eps, expected) in [(1i8, 8u64), (-1, 16)] {
                let order = CoefficientSystem::new(f, DivisionKind::Field, eps)
                    .and_then(|cs| w_inf_group(&cs))
                    .and_then(|eg| cw_u_group(&eg, 2, false))
                    .map(|r| r.cw_u_order);
                c.assert(order == Ok(Some(expected)), || {
                    format!("Q_3 eps {eps}: {order:?}, expected {expected}")
                });
            }
        }
    }
    c
}

/// Partner-type towers used to draw random queries, keyed by U type.
fn query_pool(fields: &[LocalField]) -> Result<Vec<(FormType, Vec<WittTower>)>> {
    let mut pool = Vec::new();
    for &f in fields {
        for u in FormType::all(f) {
            if f.is_archimedean() && ArchCase::of(u.kind, f)? != ArchCase::One {
                continue;
            }
            let towers = tower_group(u.partner(), Some(4))?.towers;
            pool.push((u, towers));
        }
    }
    Ok(pool)
}

pub fn predictor(seed: u64, queries: usize) -> Criterion {
    let mut c = Criterion::new(10, "conservation predictor, trivial bound and dichotomy");
    for (kind, dim_u, expected) in [
        (SpaceKind::Symplectic, 2, 8),
        (SpaceKind::Symmetric, 3, 6),
        (SpaceKind::SkewHermitian, 2, 6),
        (SpaceKind::QuatHermitian, 1, 5),
    ] {
        let u = FormType::all(padic(3))
            .into_iter()
            .find(|t| t.kind == kind)
            .expect("type");
        let got = n_trivial_antisplit(u, dim_u).map(|b| b.value);
        c.assert(got == Ok(expected), || {
            format!("trivial bound {kind} dim {dim_u}: {got:?} != {expected}")
        });
    }
    let fields = [
        padic(2),
        padic(3),
        padic(5),
        padic(7),
        LocalField::Real,
        LocalField::Complex,
    ];
    let pool = match query_pool(&fields) {
        Ok(p) => p,
        Err(e) => {
            c.error(e.to_string());
            return c;
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..queries {
        let (u, towers) = pool.choose(&mut rng).expect("nonempty pool");
        let tower = *towers.choose(&mut rng).expect("towers");
        let dim_u = u.dim_step() * rng.gen_range(0..=4);
        let n = tower.deg() + 2 * rng.gen_range(0..=dim_u);
        let q = OccurrenceQuery {
            u_type: *u,
            dim_u,
            tower,
            known_n: Some(n),
            parity: None,
        };
        let what = || {
            format!(
                "{} dim U {dim_u} tower {} n {n}",
                u.label(),
                tower.rep.disc_label()
            )
        };
        match conserve_predict(&q) {
            Ok(p) => {
                c.assert(p.consistent(), || {
                    format!("{}: {:?}", what(), p.constraints)
                });
                let back = conserve_predict(&OccurrenceQuery {
                    tower: p.partner,
                    known_n: Some(p.predicted_n),
                    ..q.clone()
                });
                match back {
                    Ok(b) => c.assert(b.predicted_n == n && b.partner == tower, || {
                        format!("{}: not an involution", what())
                    }),
                    Err(e) => c.error(format!("{}: reverse query: {e}", what())),
                }
            }
            Err(e) => c.error(format!("{}: {e}", what())),
        }
    }
    for f in [padic(2), padic(3), padic(5), padic(7)] {
        for v in FormType::all(f) {
            let towers = match tower_group(v, None) {
                Ok(tg) => tg.towers,
                Err(e) => {
                    c.error(e.to_string());
                    continue;
                }
            };
            for t in towers {
                for k in 0..3 {
                    for dim_u in 0..5 {
                        let c1 = match t.member(k) {
                            Ok(c1) => c1,
                            Err(e) => {
                                c.error(e.to_string());
                                continue;
                            }
                        };
                        if (2 * dim_u + v.d_max() - 2 - c1.dim).rem_euclid(v.dim_step()) != 0 {
                            continue;
                        }
                        match dichotomy_partner(dim_u, &c1) {
                            Ok(r) => {
                                c.assert(r.dim_sum == 2 * dim_u + v.d_max() - 2, || {
                                    format!(
                                        "{} dim U {dim_u}: dims sum to {}",
                                        v.label(),
                                        r.dim_sum
                                    )
                                });
                                c.assert(r.exclusive(), || {
                                    format!(
                                        "{} dim U {dim_u} {}: not exclusive",
                                        v.label(),
                                        c1.disc_label()
                                    )
                                });
                            }
                            Err(e) => c.error(format!("{}: {e}", v.label())),
                        }
                    }
                }
            }
        }
    }
    c
}

/// An assignment on one `K_U`-coset satisfying the case-3 equalities: an adjacent
/// pair summing to `2 dim U + d`, every other tower below a coset minimum tight against
/// the opposite minimum.
pub fn synthetic_case3(rng: &mut impl Rng) -> Result<Case3Assignment> {
    let kinds = [
        SpaceKind::Symplectic,
        SpaceKind::Hermitian,
        SpaceKind::SkewHermitian,
        SpaceKind::QuatSkewHermitian,
    ];
    loop {
        let kind = *kinds.choose(rng).expect("kinds");
        let u = FormType::parse(kind.name(), LocalField::Real, None)?;
        let d = case3_generator(u)?;
        let dim_u = u.dim_step() * rng.gen_range(0..=3);
        let base = rng.gen_range(0..d);
        let sig = |k: i64| base + d * k;
        let target = 2 * dim_u + d;
        let j: i64 = rng.gen_range(-3..=3);
        let (s1, s2) = (sig(j), sig(j + 1));
        let options: Vec<i64> = (s1.abs()..=2 * dim_u + s1.abs())
            .step_by(2)
            .filter(|a| {
                let b = target - a;
                b >= s2.abs() && b <= 2 * dim_u + s2.abs() && (b - s2).rem_euclid(2) == 0
            })
            .collect();
        let Some(&a) = options.choose(rng) else {
            continue;
        };
        let mins = [(j, a), (j + 1, target - a)];
        let mut values: BTreeMap<i64, i64> = mins.iter().map(|&(k, n)| (k, n)).collect();
        for (i, &(p, m)) in mins.iter().enumerate() {
            let (q, mq) = mins[1 - i];
            for k in (p - 2 * (m / d + 2)..=p + 2 * (m / d + 2)).step_by(2) {
                if k != p && sig(k).abs() < m {
                    values.insert(k, 2 * dim_u + d * (k - q).abs() - mq);
                }
            }
        }
        let ok_window = values.iter().all(|(&k, &n)| {
            let deg = sig(k).abs();
            n >= deg && (n - deg) % 2 == 0 && n <= 2 * dim_u + deg
        });
        let ok_pairs = values.iter().all(|(&k1, &n1)| {
            values
                .iter()
                .all(|(&k2, &n2)| k1 == k2 || n1 + n2 >= 2 * dim_u + d * (k1 - k2).abs())
        });
        let ok_minima = values
            .iter()
            .all(|(&k, &n)| n >= mins[(k - j).rem_euclid(2) as usize].1);
        if ok_window && ok_pairs && ok_minima {
            let values = values.into_iter().map(|(k, n)| (sig(k), n)).collect();
            return Ok(Case3Assignment {
                u_type: u,
                dim_u,
                base,
                values,
            });
        }
    }
}

pub fn arch_case3(seed: u64, samples: usize) -> Criterion {
    let mut c = Criterion::new(11, "archimedean case-3 checker on synthetic assignments");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let a = match synthetic_case3(&mut rng) {
            Ok(a) => a,
            Err(e) => {
                c.error(e.to_string());
                return c;
            }
        };
        let label = a.to_json().to_string();
        match arch_case3_check(&a) {
            Ok(v) => c.assert(v.status == VerdictStatus::Accept, || {
                format!("{label} not accepted: {}", v.to_json())
            }),
            Err(e) => c.error(format!("{label}: {e}")),
        }
        for &s in a.values.keys() {
            let mut lowered = a.clone();
            *lowered.values.get_mut(&s).expect("key") -= 2;
            match arch_case3_check(&lowered) {
                Ok(v) => c.assert(
                    v.status == VerdictStatus::Reject
                        && v.violations
                            .iter()
                            .any(|x| x.rule == "geqn" || x.rule == "coset_sum"),
                    || format!("{label} lowered at {s}: {}", v.to_json()),
                ),
                Err(e) => c.error(format!("{label} lowered at {s}: {e}")),
            }
        }
    }
    c
}

/// Every criterion at full strength.
pub fn acceptance_suite() -> Vec<Criterion> {
    let primes = [padic(2), padic(3), padic(5), padic(7)];
    let mut hil_fields = primes.to_vec();
    hil_fields.push(LocalField::Real);
    vec![
        d_table(),
        conserv0(&primes, None),
        cw0_orders(&primes, None),
        hilbert_symbols(&hil_fields),
        anisotropy(&[2, 3, 5], 5),
        weil_indices(&[padic(2), padic(3), padic(5), LocalField::Real]),
        kudla_kernels(&[padic(3), padic(2)]),
        real_symplectic_kernel(),
        cw_u_orders(&[padic(3)]),
        predictor(0x5eed, 1000),
        arch_case3(0xa3c3, 100),
    ]
}

/// The checks that apply to a single field, optionally restricted to one kind.
pub fn field_battery(field: LocalField, kind: Option<SpaceKind>) -> Vec<Criterion> {
    let mut out = vec![d_table()];
    if !field.is_archimedean() {
        out.push(conserv0(&[field], kind));
        out.push(cw0_orders(&[field], kind));
    }
    out.push(hilbert_symbols(&[field]));
    if let Some(p) = field.prime() {
        out.push(anisotropy(&[p], 4));
    }
    out.push(weil_indices(&[field]));
    out.push(kudla_kernels(&[field]));
    if field == LocalField::Real {
        out.push(real_symplectic_kernel());
        out.push(arch_case3(0xa3c3, 25));
    }
    out.push(cw_u_orders(&[field]));
    out
}

pub fn report_json(criteria: &[Criterion]) -> Value {
    let failures: usize = criteria.iter().map(|c| c.failures.len()).sum();
    json!({
        "criteria": criteria.iter().map(Criterion::to_json).collect::<Vec<_>>(),
        "total_checks": criteria.iter().map(|c| c.checked).sum::<usize>(),
        "total_failures": failures,
        "passed": criteria.iter().all(Criterion::passed),
    })
}
