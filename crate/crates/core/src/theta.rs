//! First-occurrence arithmetic: conservation predictions, the trivial-representation
//! bound, stable range, dichotomy and the archimedean cases.
//!
//! Representations are never modelled; a query carries a known first occurrence index
//! and everything else follows from `dim U`, `d` and tower degrees.

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::forms::{
    hyperbolic_plane, in_monoid, split_rank, v_circle, FormType, Model, SpaceClass, SpaceKind,
};
use crate::kudla::{anti_split_tower_u, w_inf_group, AntiSplit, ArchCase};
use crate::localfield::LocalField;
use crate::witt::{anti_split_tower0, split_tower, WittTower};

/// `(d, rho_r)` with `rho_r = (2r + d - 2)/4`.
pub fn d_and_rho(v_type: FormType, r: i64) -> Result<(i64, Ratio<i64>)> {
    if r < 0 {
        return Err(Error::InvalidForm(format!("rank {r} is negative")));
    }
    let d = v_type.d_max();
    Ok((d, Ratio::new(2 * r + d - 2, 4)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialBound {
    pub dim_u: i64,
    pub d: i64,
    /// `n_{t_U}(1_U) = 2 dim U + d` for the anti-split tower.
    pub value: i64,
}

impl TrivialBound {
    pub fn to_json(&self) -> Value {
        json!({
            "dim_u": self.dim_u,
            "d": self.d,
            "n_trivial_antisplit": self.value,
            "lower_bound": format!("n_t(1_U) >= {} on the anti-split tower", self.value),
        })
    }
}

/// First occurrence of the trivial representation of `G(U)` in the anti-split tower.
pub fn n_trivial_antisplit(u: FormType, dim_u: i64) -> Result<TrivialBound> {
    if dim_u < 0 {
        return Err(Error::InvalidForm("negative dimension".into()));
    }
    let d = u.partner().d_max();
    Ok(TrivialBound {
        dim_u,
        d,
        value: 2 * dim_u + d,
    })
}

/// `n_t(1_U)` on an arbitrary tower: exact on the split and anti-split towers, otherwise
/// only the window `[deg t, 2 dim U + deg t]` is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialInterval {
    pub lo: i64,
    pub hi: i64,
    pub exact: bool,
}

impl TrivialInterval {
    pub fn to_json(&self) -> Value {
        json!({ "lo": self.lo, "hi": self.hi, "exact": self.exact })
    }
}

pub fn trivial_interval(u: FormType, dim_u: i64, tower: &WittTower) -> Result<TrivialInterval> {
    let bound = n_trivial_antisplit(u, dim_u)?;
    let v = u.partner();
    if tower.ty != v {
        return Err(Error::TypeMismatch(format!(
            "tower is not of type {}",
            v.label()
        )));
    }
    if *tower == split_tower(v) {
        return Ok(TrivialInterval {
            lo: 0,
            hi: 0,
            exact: true,
        });
    }
    if !v.field.is_archimedean() && *tower == anti_split_tower0(v)? {
        return Ok(TrivialInterval {
            lo: bound.value,
            hi: bound.value,
            exact: true,
        });
    }
    Ok(TrivialInterval {
        lo: tower.deg(),
        hi: 2 * dim_u + tower.deg(),
        exact: false,
    })
}

/// A first-occurrence query for an opaque representation of `G(U)`.
#[derive(Clone, Debug)]
pub struct OccurrenceQuery {
    pub u_type: FormType,
    pub dim_u: i64,
    /// V-side image of the tower.
    pub tower: WittTower,
    pub known_n: Option<i64>,
    /// Parity of `dim V` for which the representation is genuine.
    pub parity: Option<i64>,
}

impl OccurrenceQuery {
    pub fn v_type(&self) -> FormType {
        self.u_type.partner()
    }

    /// Checks types, genuineness and the window `deg t <= n <= 2 dim U + deg t`, `n = deg t mod 2`.
    pub fn validate(&self) -> Result<()> {
        if self.dim_u < 0 {
            return Err(Error::InvalidForm("negative dimension".into()));
        }
        if self.tower.ty != self.v_type() {
            return Err(Error::TypeMismatch(format!(
                "tower is of type {} but the partner of {} is {}",
                self.tower.ty.label(),
                self.u_type.label(),
                self.v_type().label()
            )));
        }
        let deg = self.tower.deg();
        if let Some(p) = self.parity {
            if p.rem_euclid(2) != deg.rem_euclid(2) {
                return Err(Error::Inconsistent(format!(
                    "representation is genuine for parity {p}, tower has degree {deg}"
                )));
            }
        }
        if let Some(n) = self.known_n {
            for c in window_constraints("known", n, deg, self.dim_u) {
                if !c.holds {
                    return Err(Error::Inconsistent(c.detail));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl Constraint {
    fn new(name: &str, holds: bool, detail: String) -> Constraint {
        Constraint {
            name: name.into(),
            holds,
            detail,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "name": self.name, "holds": self.holds, "detail": self.detail })
    }
}

fn window_constraints(who: &str, n: i64, deg: i64, dim_u: i64) -> Vec<Constraint> {
    vec![
        Constraint::new(
            &format!("{who}_at_least_deg"),
            n >= deg,
            format!("n = {n} >= deg = {deg}"),
        ),
        Constraint::new(
            &format!("{who}_parity"),
            (n - deg).rem_euclid(2) == 0,
            format!("n = {n} has the parity of deg = {deg}"),
        ),
        Constraint::new(
            &format!("{who}_stable_ceiling"),
            n <= 2 * dim_u + deg,
            format!("n = {n} <= 2 dim U + deg = {}", 2 * dim_u + deg),
        ),
    ]
}

#[derive(Clone, Debug)]
pub struct Prediction {
    pub partner: WittTower,
    pub predicted_n: i64,
    pub d: i64,
    pub constraints: Vec<Constraint>,
}

impl Prediction {
    pub fn consistent(&self) -> bool {
        self.constraints.iter().all(|c| c.holds)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "partner_tower": self.partner.to_json(),
            "predicted_n": self.predicted_n,
            "d": self.d,
            "constraints": self.constraints.iter().map(Constraint::to_json).collect::<Vec<_>>(),
            "consistent": self.consistent(),
        })
    }
}

/// `n_{t2} = 2 dim U + d - n_{t1}` for `t2 = t1 + t_U`.
pub fn conserve_predict(q: &OccurrenceQuery) -> Result<Prediction> {
    q.validate()?;
    let n1 = q
        .known_n
        .ok_or_else(|| Error::InvalidForm("a known first occurrence index is required".into()))?;
    if q.u_type.field.is_archimedean() {
        match ArchCase::of(q.u_type.kind, q.u_type.field)? {
            ArchCase::One => {}
            c => {
                return Err(Error::NotApplicable(format!(
                    "{} is archimedean {}; use the dedicated checks",
                    q.u_type.label(),
                    c.name()
                )))
            }
        }
    }
    let v = q.v_type();
    let d = v.d_max();
    let partner = q.tower.add(&anti_split_tower0(v)?)?;
    let n2 = 2 * q.dim_u + d - n1;
    let mut constraints = window_constraints("predicted", n2, partner.deg(), q.dim_u);
    constraints.push(Constraint::new(
        "degrees_sum_to_d",
        q.tower.deg() + partner.deg() == d,
        format!(
            "deg t1 + deg t2 = {} + {} vs d = {d}",
            q.tower.deg(),
            partner.deg()
        ),
    ));
    Ok(Prediction {
        partner,
        predicted_n: n2,
        d,
        constraints,
    })
}

/// Whether the stable range guarantees occurrence: `split rank >= dim U`.
pub fn stable_range_occurs(dim_u: i64, c: &SpaceClass) -> Result<bool> {
    if !in_monoid(c) {
        return Err(Error::InvalidClass(format!(
            "dim {} disc {} is not the class of a space",
            c.dim,
            c.disc_label()
        )));
    }
    Ok(split_rank(c)? >= dim_u)
}

#[derive(Clone, Debug)]
pub struct Dichotomy {
    pub c1: SpaceClass,
    /// May lie outside the monoid of actual spaces.
    pub c2: SpaceClass,
    pub dim_sum: i64,
    pub c1_stable: bool,
    pub c2_in_monoid: bool,
}

impl Dichotomy {
    /// Exactly one of "c1 is in the stable range" and "c2 is an actual space" holds.
    pub fn exclusive(&self) -> bool {
        self.c1_stable != self.c2_in_monoid
    }

    pub fn to_json(&self) -> Value {
        json!({
            "c1": self.c1.to_json(),
            "c2": self.c2.to_json(),
            "dim_sum": self.dim_sum,
            "c1_stable": self.c1_stable,
            "c2_in_monoid": self.c2_in_monoid,
            "exclusive": self.exclusive(),
        })
    }
}

/// The class `c2` with `c1 - c2` in the anti-split tower and `dim c1 + dim c2 = 2 dim U + d - 2`.
pub fn dichotomy_partner(dim_u: i64, c1: &SpaceClass) -> Result<Dichotomy> {
    if dim_u < 0 {
        return Err(Error::InvalidForm("negative dimension".into()));
    }
    if !in_monoid(c1) {
        return Err(Error::InvalidClass(
            "c1 must be the class of a space".into(),
        ));
    }
    let ty = c1.ty;
    let anti = v_circle(ty)?;
    let d = ty.d_max();
    let k = dim_u + d - 1 - c1.dim;
    if (2 * dim_u + d - 2 - c1.dim) % ty.dim_step() != 0 {
        return Err(Error::InvalidClass(
            "dimensions are incompatible with the type".into(),
        ));
    }
    let c2 = c1.sub(&anti)?.add(&hyperbolic_plane(ty).scale(k)?)?;
    Ok(Dichotomy {
        c1: *c1,
        dim_sum: c1.dim + c2.dim,
        c1_stable: split_rank(c1)? >= dim_u,
        c2_in_monoid: in_monoid(&c2),
        c2,
    })
}

pub fn arch_case(u: FormType) -> Result<ArchCase> {
    ArchCase::of(u.kind, u.field)
}

/// Upper bound for case 2: `dim U` if the tower parity matches, `dim U + 1` otherwise.
pub fn arch_case2_bound(u: FormType, dim_u: i64, tower_parity: i64) -> Result<i64> {
    if arch_case(u)? != ArchCase::Two {
        return Err(Error::NotApplicable(format!(
            "{} is not archimedean case 2",
            u.label()
        )));
    }
    if dim_u < 0 {
        return Err(Error::InvalidForm("negative dimension".into()));
    }
    Ok(if dim_u.rem_euclid(2) == tower_parity.rem_euclid(2) {
        dim_u
    } else {
        dim_u + 1
    })
}

/// Case-3 data: first occurrences on towers of one `K_U`-coset, keyed by signature index.
#[derive(Clone, Debug)]
pub struct Case3Assignment {
    pub u_type: FormType,
    pub dim_u: i64,
    /// Any signature index in the coset.
    pub base: i64,
    pub values: BTreeMap<i64, i64>,
}

impl Case3Assignment {
    pub fn from_json(v: &Value) -> Result<Case3Assignment> {
        let field = match v.get("field") {
            Some(f) => serde_json::from_value::<LocalField>(f.clone())
                .map_err(|e| Error::Parse(format!("field: {e}")))?,
            None => LocalField::Real,
        };
        let u_type = FormType::from_json(
            &json!({ "type": v.get("u_type").cloned().unwrap_or(Value::Null), "d": v.get("d").cloned() })
                .as_object()
                .map(|o| Value::Object(o.iter().filter(|(_, x)| !x.is_null()).map(|(k, x)| (k.clone(), x.clone())).collect()))
                .unwrap_or(Value::Null),
            Some(field),
        )?;
        let dim_u = v
            .get("dim_u")
            .and_then(Value::as_i64)
            .ok_or_else(|| Error::Parse("missing 'dim_u'".into()))?;
        let values_v = v
            .get("values")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("missing 'values'".into()))?;
        let mut values = BTreeMap::new();
        for (k, n) in values_v {
            let s: i64 = k
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("tower key '{k}' is not a signature index")))?;
            let n = n
                .as_i64()
                .ok_or_else(|| Error::Parse(format!("value at {k} is not an integer")))?;
            values.insert(s, n);
        }
        let base = match v.get("coset").and_then(Value::as_i64) {
            Some(b) => b,
            None => *values
                .keys()
                .next()
                .ok_or_else(|| Error::Parse("empty assignment".into()))?,
        };
        Ok(Case3Assignment {
            u_type,
            dim_u,
            base,
            values,
        })
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "field": self.u_type.field,
            "u_type": self.u_type.kind,
            "dim_u": self.dim_u,
            "coset": self.base,
            "values": self.values.iter().map(|(s, n)| (s.to_string(), json!(n))).collect::<serde_json::Map<_, _>>(),
        });
        if let Some(d) = self.u_type.ext {
            v["d"] = d.to_json();
        }
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictStatus {
    Accept,
    Reject,
    Underdetermined,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// `window`, `geqn`, `equality_pair` or `coset_sum`.
    pub rule: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct Case3Verdict {
    pub status: VerdictStatus,
    pub d: i64,
    pub violations: Vec<Violation>,
    /// Unassigned towers (signature indices) whose degree is below the current coset minimum.
    pub missing: Vec<i64>,
    pub coset_minima: [Option<i64>; 2],
}

impl Case3Verdict {
    pub fn to_json(&self) -> Value {
        json!({
            "verdict": match self.status {
                VerdictStatus::Accept => "accept",
                VerdictStatus::Reject => "reject",
                VerdictStatus::Underdetermined => "underdetermined",
            },
            "d": self.d,
            "violations": self.violations.iter().map(|v| json!({"rule": v.rule, "detail": v.detail})).collect::<Vec<_>>(),
            "missing": self.missing,
            "coset_minima": self.coset_minima,
        })
    }
}

/// The generator degree `d` of `K_U`, read off the kernel of the Kudla homomorphism.
pub fn case3_generator(u: FormType) -> Result<i64> {
    if arch_case(u)? != ArchCase::Three {
        return Err(Error::NotApplicable(format!(
            "{} is not archimedean case 3",
            u.label()
        )));
    }
    let eg = w_inf_group(&u.partner().system()?)?;
    match anti_split_tower_u(&eg, &eg.psi)? {
        AntiSplit::KernelGenerator { tower, .. } => tower
            .signature_index()
            .ok_or_else(|| Error::Inconsistent("case 3 tower without a signature index".into())),
        AntiSplit::Tower { .. } => Err(Error::Inconsistent("case 3 kernel is finite".into())),
    }
}

/// Checks an assignment on a `K_U`-coset against the pairwise bound, the adjacent
/// equality and the sum of minima over `T / 2 K_U`.
pub fn arch_case3_check(a: &Case3Assignment) -> Result<Case3Verdict> {
    let d = case3_generator(a.u_type)?;
    if a.u_type.partner().model() != Model::Signature {
        return Err(Error::Inconsistent(
            "case 3 partner is not classified by signature".into(),
        ));
    }
    if a.dim_u < 0 {
        return Err(Error::InvalidForm("negative dimension".into()));
    }
    let target = 2 * a.dim_u + d;
    let mut violations = Vec::new();
    for &s in a.values.keys() {
        if (s - a.base).rem_euclid(d) != 0 {
            return Err(Error::Inconsistent(format!(
                "tower {s} is not in the coset of {} modulo {d}",
                a.base
            )));
        }
    }
    let step = |s: i64| (s - a.base).div_euclid(d);
    for (&s, &n) in &a.values {
        for c in window_constraints("n", n, s.abs(), a.dim_u) {
            if !c.holds {
                violations.push(Violation {
                    rule: "window",
                    detail: format!("tower {s}: {}", c.detail),
                });
            }
        }
    }
    let entries: Vec<(i64, i64)> = a.values.iter().map(|(s, n)| (*s, *n)).collect();
    let mut adjacent_equality = false;
    for (i, &(s3, n3)) in entries.iter().enumerate() {
        for &(s4, n4) in &entries[i + 1..] {
            let dist = (step(s3) - step(s4)).abs();
            let bound = 2 * a.dim_u + d * dist;
            if n3 + n4 < bound {
                violations.push(Violation {
                    rule: "geqn",
                    detail: format!(
                        "towers {s3},{s4}: {n3} + {n4} < 2 dim U + d |t3 - t4| = {bound}"
                    ),
                });
            }
            if dist == 1 && n3 + n4 == target {
                adjacent_equality = true;
            }
        }
    }
    // Minima over the two classes modulo 2 K_U, and the towers still needed to pin them down.
    let mut minima = [None, None];
    for (&s, &n) in &a.values {
        let c = step(s).rem_euclid(2) as usize;
        minima[c] = Some(minima[c].map_or(n, |m: i64| m.min(n)));
    }
    let mut missing = Vec::new();
    for c in 0..2usize {
        let bound = match minima[c] {
            Some(m) => m,
            None => {
                missing.push(a.base + d * c as i64);
                continue;
            }
        };
        // Towers with |s| < bound: s ranges over a finite window.
        let lo = (-bound - a.base).div_euclid(d) - 1;
        let hi = (bound - a.base).div_euclid(d) + 1;
        for k in lo..=hi {
            let s = a.base + d * k;
            if k.rem_euclid(2) as usize == c && s.abs() < bound && !a.values.contains_key(&s) {
                missing.push(s);
            }
        }
    }
    missing.sort();
    let determined = missing.is_empty();
    if determined {
        let sum = minima[0].unwrap_or(0) + minima[1].unwrap_or(0);
        if sum != target {
            violations.push(Violation {
                rule: "coset_sum",
                detail: format!(
                    "sum of minima over T/2K_U is {sum}, expected 2 dim U + d = {target}"
                ),
            });
        }
        if !adjacent_equality {
            violations.push(Violation {
                rule: "equality_pair",
                detail: format!("no pair of adjacent towers has n3 + n4 = {target}"),
            });
        }
    }
    let status = if !violations.is_empty() {
        VerdictStatus::Reject
    } else if !determined {
        VerdictStatus::Underdetermined
    } else {
        VerdictStatus::Accept
    };
    Ok(Case3Verdict {
        status,
        d,
        violations,
        missing,
        coset_minima: minima,
    })
}

/// Dimensions in a tower at which a representation first occurring at `n` occurs (persistence),
/// up to the stable-range ceiling where occurrence is automatic.
pub fn persistence_dims(tower: &WittTower, n: i64, dim_u: i64) -> Result<Vec<i64>> {
    let deg = tower.deg();
    for c in window_constraints("n", n, deg, dim_u) {
        if !c.holds {
            return Err(Error::Inconsistent(c.detail));
        }
    }
    Ok((n..=2 * dim_u + deg).step_by(2).collect())
}

/// Lowest-degree tower of the partner type compatible with a known index `n`.
pub fn default_tower(u: FormType, n: i64) -> Result<WittTower> {
    let v = u.partner();
    let bound = if v.model() == Model::Signature {
        Some(n.abs().max(1))
    } else {
        None
    };
    let tg = crate::witt::tower_group(v, bound)?;
    tg.towers
        .iter()
        .filter(|t| t.deg() <= n && (n - t.deg()).rem_euclid(2) == 0)
        .min_by_key(|t| t.deg())
        .copied()
        .ok_or_else(|| {
            Error::Inconsistent(format!(
                "no tower of {} is compatible with n = {n}",
                v.label()
            ))
        })
}

pub fn is_symplectic_side(v: FormType) -> bool {
    v.kind == SpaceKind::Symplectic
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{invariants, FormSpec};
    use crate::witt::tower_group;

    fn q(p: u64) -> LocalField {
        LocalField::padic(p).unwrap()
    }

    fn ty(k: SpaceKind, f: LocalField) -> FormType {
        let ext = k
            .is_quadratic()
            .then(|| f.class_of(-1).ok())
            .flatten()
            .filter(|c| !c.is_one());
        let ext = if k.is_quadratic() && ext.is_none() {
            Some(f.class_of(f.prime().unwrap_or(3) as i64).unwrap())
        } else {
            ext
        };
        FormType::new(k, f, ext).unwrap()
    }

    #[test]
    fn rho_examples() {
        let f = q(3);
        assert_eq!(
            d_and_rho(ty(SpaceKind::Symmetric, f), 1).unwrap(),
            (4, Ratio::new(1, 1))
        );
        assert_eq!(
            d_and_rho(ty(SpaceKind::Symplectic, f), 2).unwrap(),
            (0, Ratio::new(1, 2))
        );
        assert_eq!(
            d_and_rho(ty(SpaceKind::Hermitian, f), 0).unwrap(),
            (2, Ratio::new(0, 1))
        );
        assert!(d_and_rho(ty(SpaceKind::Hermitian, f), -1).is_err());
    }

    #[test]
    fn trivial_bound() {
        let f = q(3);
        assert_eq!(
            n_trivial_antisplit(ty(SpaceKind::Symplectic, f), 2)
                .unwrap()
                .value,
            8
        );
        assert_eq!(
            n_trivial_antisplit(ty(SpaceKind::SkewHermitian, f), 1)
                .unwrap()
                .value,
            4
        );
        for k in SpaceKind::ALL {
            assert_eq!(
                n_trivial_antisplit(ty(k, f), 0).unwrap().value,
                k.partner().d_max()
            );
        }
    }

    #[test]
    fn trivial_intervals() {
        let u = ty(SpaceKind::Symplectic, q(3));
        let v = u.partner();
        assert_eq!(
            trivial_interval(u, 2, &split_tower(v)).unwrap(),
            TrivialInterval {
                lo: 0,
                hi: 0,
                exact: true
            }
        );
        let anti = anti_split_tower0(v).unwrap();
        assert_eq!(trivial_interval(u, 2, &anti).unwrap().lo, 8);
        let one = default_tower(u, 1).unwrap();
        assert_eq!(
            trivial_interval(u, 2, &one).unwrap(),
            TrivialInterval {
                lo: 1,
                hi: 5,
                exact: false
            }
        );
    }

    #[test]
    fn prediction_example_and_involution() {
        let u = ty(SpaceKind::Symplectic, q(3));
        let tower = default_tower(u, 3).unwrap();
        let query = OccurrenceQuery {
            u_type: u,
            dim_u: 2,
            tower,
            known_n: Some(3),
            parity: None,
        };
        let p = conserve_predict(&query).unwrap();
        assert_eq!(p.predicted_n, 5);
        assert!(p.consistent());
        let back = conserve_predict(&OccurrenceQuery {
            tower: p.partner,
            known_n: Some(5),
            ..query.clone()
        })
        .unwrap();
        assert_eq!(back.predicted_n, 3);
        assert_eq!(back.partner, tower);
    }

    #[test]
    fn prediction_at_u_zero_is_conserv0() {
        let u = ty(SpaceKind::SkewHermitian, q(5));
        let tg = tower_group(u.partner(), None).unwrap();
        for t in &tg.towers {
            let p = conserve_predict(&OccurrenceQuery {
                u_type: u,
                dim_u: 0,
                tower: *t,
                known_n: Some(t.deg()),
                parity: None,
            })
            .unwrap();
            assert_eq!(p.predicted_n, p.partner.deg());
            assert_eq!(t.deg() + p.partner.deg(), 2);
        }
    }

    #[test]
    fn rejects_bad_queries() {
        let u = ty(SpaceKind::Symplectic, q(3));
        let tower = default_tower(u, 3).unwrap();
        let base = OccurrenceQuery {
            u_type: u,
            dim_u: 2,
            tower,
            known_n: Some(3),
            parity: None,
        };
        assert!(conserve_predict(&OccurrenceQuery {
            known_n: None,
            ..base.clone()
        })
        .is_err());
        assert!(conserve_predict(&OccurrenceQuery {
            known_n: Some(4),
            ..base.clone()
        })
        .is_err());
        assert!(conserve_predict(&OccurrenceQuery {
            parity: Some(0),
            ..base.clone()
        })
        .is_err());
        let real_sp = ty(SpaceKind::Symplectic, LocalField::Real);
        let t = default_tower(real_sp, 0).unwrap();
        assert!(conserve_predict(&OccurrenceQuery {
            u_type: real_sp,
            dim_u: 1,
            tower: t,
            known_n: Some(0),
            parity: None
        })
        .is_err());
    }

    #[test]
    fn stable_range() {
        let v = ty(SpaceKind::Symmetric, q(3));
        let c = invariants(&FormSpec::diagonal(v, vec![1, -1, 1, -1]).unwrap()).unwrap();
        assert!(stable_range_occurs(2, &c).unwrap());
        let c1 = invariants(&FormSpec::diagonal(v, vec![1, -1, 1]).unwrap()).unwrap();
        assert!(!stable_range_occurs(2, &c1).unwrap());
        assert!(stable_range_occurs(0, &c1).unwrap());
    }

    #[test]
    fn dichotomy() {
        let f = q(3);
        let v = ty(SpaceKind::SkewHermitian, f);
        let c1 = invariants(&FormSpec::diagonal(v, vec![1]).unwrap()).unwrap();
        let r = dichotomy_partner(1, &c1).unwrap();
        assert_eq!(r.c2.dim, 1);
        assert!(r.exclusive());
        let sym = ty(SpaceKind::Symmetric, f);
        for dim_u in 0..4 {
            for t in tower_group(sym, None).unwrap().towers {
                for k in 0..3 {
                    let c1 = t.member(k).unwrap();
                    let r = dichotomy_partner(dim_u, &c1).unwrap();
                    assert_eq!(r.dim_sum, 2 * dim_u + 2);
                    assert!(r.exclusive(), "{dim_u} {}", c1.disc_label());
                }
            }
        }
        // Full rank at the top dimension: the partner is virtual.
        let full =
            invariants(&FormSpec::diagonal(sym, vec![1, -1, 1, -1, 1, -1]).unwrap()).unwrap();
        let r = dichotomy_partner(2, &full).unwrap();
        assert!(!r.c2_in_monoid);
    }

    #[test]
    fn arch_cases() {
        assert_eq!(
            arch_case(ty(SpaceKind::Symmetric, LocalField::Real)).unwrap(),
            ArchCase::One
        );
        assert_eq!(
            arch_case(ty(SpaceKind::Symplectic, LocalField::Complex)).unwrap(),
            ArchCase::Two
        );
        assert_eq!(
            arch_case(ty(SpaceKind::Symplectic, LocalField::Real)).unwrap(),
            ArchCase::Three
        );
        assert!(arch_case(ty(SpaceKind::Symplectic, q(3))).is_err());
        let c2 = ty(SpaceKind::QuatHermitian, LocalField::Real);
        assert_eq!(arch_case2_bound(c2, 3, 1).unwrap(), 3);
        assert_eq!(arch_case2_bound(c2, 3, 0).unwrap(), 4);
        assert!(arch_case2_bound(ty(SpaceKind::Symplectic, LocalField::Real), 3, 0).is_err());
    }

    #[test]
    fn case3_generators() {
        assert_eq!(
            case3_generator(ty(SpaceKind::Symplectic, LocalField::Real)).unwrap(),
            4
        );
        assert_eq!(
            case3_generator(ty(SpaceKind::Hermitian, LocalField::Real)).unwrap(),
            2
        );
        assert_eq!(
            case3_generator(ty(SpaceKind::SkewHermitian, LocalField::Real)).unwrap(),
            2
        );
        assert_eq!(
            case3_generator(ty(SpaceKind::QuatSkewHermitian, LocalField::Real)).unwrap(),
            1
        );
    }

    fn assignment(u: FormType, dim_u: i64, base: i64, values: &[(i64, i64)]) -> Case3Assignment {
        Case3Assignment {
            u_type: u,
            dim_u,
            base,
            values: values.iter().copied().collect(),
        }
    }

    #[test]
    fn case3_examples() {
        let sp = ty(SpaceKind::Symplectic, LocalField::Real);
        // Towers 0 and 4 carry the minima 2 and 6; 2 + 6 = 2*2 + 4.
        let ok = assignment(sp, 2, 0, &[(0, 2), (4, 6), (-4, 8), (8, 12), (-8, 12)]);
        let v = arch_case3_check(&ok).unwrap();
        assert_eq!(v.status, VerdictStatus::Accept, "{:?}", v);
        let bad = assignment(sp, 2, 0, &[(0, 2), (4, 6), (-4, 8), (8, 8), (-8, 12)]);
        let v = arch_case3_check(&bad).unwrap();
        assert_eq!(v.status, VerdictStatus::Reject);
        assert!(v.violations.iter().any(|x| x.rule == "geqn"));
        let herm = ty(SpaceKind::Hermitian, LocalField::Real);
        let v = arch_case3_check(&assignment(herm, 0, 0, &[(0, 0), (2, 2), (-2, 2)])).unwrap();
        assert_eq!(v.status, VerdictStatus::Accept, "{:?}", v);
        assert_eq!(v.coset_minima[0].unwrap() + v.coset_minima[1].unwrap(), 2);
        let v = arch_case3_check(&assignment(sp, 2, 0, &[(0, 4)])).unwrap();
        assert_eq!(v.status, VerdictStatus::Underdetermined);
    }

    #[test]
    fn assignment_json_round_trip() {
        let herm = ty(SpaceKind::Hermitian, LocalField::Real);
        let a = assignment(herm, 1, 1, &[(1, 1), (-1, 3)]);
        let b = Case3Assignment::from_json(&a.to_json()).unwrap();
        assert_eq!(b.values, a.values);
        assert_eq!(b.u_type, a.u_type);
    }
}
