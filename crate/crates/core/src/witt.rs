//! Witt towers and the Witt group `CW_0 = W_0 / Z H`.

use std::collections::HashMap;

use serde_json::{json, Value};

use crate::abgroups::{AbGroup, GroupElem, Quotient};
use crate::error::{Error, Result};
use crate::forms::{
    anisotropic_classes, anisotropic_kernel, hyperbolic_plane, v_circle, FormType, Model,
    SpaceClass, W0Model,
};

/// A Witt tower, represented by its anisotropic member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WittTower {
    pub ty: FormType,
    pub rep: SpaceClass,
}

impl WittTower {
    /// Anisotropic degree.
    pub fn deg(&self) -> i64 {
        self.rep.dim
    }

    /// Signature difference `pos - neg` of the anisotropic member, for real signature types.
    pub fn signature_index(&self) -> Option<i64> {
        (self.ty.model() == Model::Signature).then(|| self.rep.pos() - self.rep.neg)
    }

    pub fn add(&self, other: &WittTower) -> Result<WittTower> {
        tower_of(&self.rep.add(&other.rep)?)
    }

    pub fn neg(&self) -> Result<WittTower> {
        tower_of(&self.rep.neg()?)
    }

    pub fn sub(&self, other: &WittTower) -> Result<WittTower> {
        tower_of(&self.rep.sub(&other.rep)?)
    }

    /// The member of split rank `r`.
    pub fn member(&self, r: i64) -> Result<SpaceClass> {
        self.rep.add(&hyperbolic_plane(self.ty).scale(r)?)
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "deg": self.deg(), "anisotropic": self.rep.to_json() });
        if let Some(s) = self.signature_index() {
            v["signature_index"] = json!(s);
        }
        v
    }
}

/// The tower containing `c` (or a translate of `c` by hyperbolic planes).
pub fn tower_of(c: &SpaceClass) -> Result<WittTower> {
    Ok(WittTower {
        ty: c.ty,
        rep: anisotropic_kernel(c)?,
    })
}

pub fn split_tower(ty: FormType) -> WittTower {
    WittTower {
        ty,
        rep: SpaceClass::zero(ty),
    }
}

/// `CW_0` as a quotient of the Witt-Grothendieck presentation, with its towers.
#[derive(Clone, Debug)]
pub struct TowerGroup {
    pub ty: FormType,
    pub group: AbGroup,
    pub w0: W0Model,
    pub quotient: Quotient,
    /// Every tower for finite `CW_0`; towers with `|signature index| <= bound` otherwise.
    pub towers: Vec<WittTower>,
    index: HashMap<GroupElem, usize>,
}

impl TowerGroup {
    pub fn elem(&self, t: &WittTower) -> Result<GroupElem> {
        Ok(self.quotient.proj.apply(&self.w0.coords(&t.rep)?))
    }

    /// The tower at a group element; for infinite `CW_0` it is rebuilt from a lift.
    pub fn tower_at(&self, x: &GroupElem) -> Result<WittTower> {
        let x = self.group.normalize(&x.0);
        if let Some(&i) = self.index.get(&x) {
            return Ok(self.towers[i]);
        }
        let lift = self.quotient.lift(&x);
        tower_of(&self.w0.class(&lift)?)
    }

    pub fn order(&self) -> Option<u64> {
        self.group.order()
    }

    pub fn to_json(&self) -> Value {
        let towers: Vec<Value> = self
            .towers
            .iter()
            .map(|t| {
                let mut v = t.to_json();
                v["coords"] = json!(self.elem(t).map(|e| e.0).unwrap_or_default());
                v
            })
            .collect();
        json!({
            "type": self.ty.to_json(),
            "group": self.group.to_json(),
            "order": self.order(),
            "towers": towers,
        })
    }
}

/// Builds `CW_0` as `W_0 / Z H` and checks it against the enumerated anisotropic
/// classes: for finite `CW_0` the projection must be a bijection from those classes.
pub fn tower_group(ty: FormType, bound: Option<i64>) -> Result<TowerGroup> {
    let w0 = W0Model::new(ty)?;
    let h = w0.coords(&hyperbolic_plane(ty))?;
    let quotient = w0.group.quotient(&[h])?;
    let group = quotient.group.clone();
    let aniso = anisotropic_classes(ty, bound.or(Some(0)))?;
    let mut towers = Vec::new();
    let mut index = HashMap::new();
    for c in aniso {
        let x = quotient.proj.apply(&w0.coords(&c)?);
        if index.insert(x.clone(), towers.len()).is_some() {
            return Err(Error::Inconsistent(format!(
                "two anisotropic classes of {} in one tower",
                ty.label()
            )));
        }
        towers.push(WittTower { ty, rep: c });
    }
    if let Some(n) = group.order() {
        if n != towers.len() as u64 {
            return Err(Error::Inconsistent(format!(
                "{}: quotient has order {n} but there are {} anisotropic classes",
                ty.label(),
                towers.len()
            )));
        }
    }
    Ok(TowerGroup {
        ty,
        group,
        w0,
        quotient,
        towers,
        index,
    })
}

/// The tower of maximal anisotropic degree.
pub fn anti_split_tower0(ty: FormType) -> Result<WittTower> {
    Ok(WittTower {
        ty,
        rep: v_circle(ty)?,
    })
}

#[derive(Clone, Debug)]
pub struct Conserv0Report {
    pub ty: FormType,
    pub d: i64,
    /// `(t1, t2 = t1 + anti-split, deg t1, deg t2)`.
    pub pairs: Vec<(WittTower, WittTower, i64, i64)>,
    pub failures: Vec<String>,
}

impl Conserv0Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "type": self.ty.to_json(),
            "d": self.d,
            "pairs": self.pairs.iter().map(|(a, b, da, db)| json!({
                "t1": a.rep.disc_label(), "deg1": da, "t2": b.rep.disc_label(), "deg2": db, "sum": da + db,
            })).collect::<Vec<_>>(),
            "failures": self.failures,
            "passed": self.passed(),
        })
    }
}

/// For every tower `t1`, pairs it with `t1 + t0` (anti-split) and checks that the
/// anisotropic degrees add up to `d_max`.
pub fn check_conserv0(ty: FormType) -> Result<Conserv0Report> {
    let tg = tower_group(ty, None)?;
    let anti = anti_split_tower0(ty)?;
    let d = match ty.model() {
        Model::Witt => ty.d_max(),
        _ => anti.deg(),
    };
    let mut pairs = Vec::new();
    let mut failures = Vec::new();
    let twice = anti.add(&anti)?;
    if twice != split_tower(ty) {
        failures.push(format!(
            "anti-split tower has order > 2 (2 t0 has degree {})",
            twice.deg()
        ));
    }
    for t1 in &tg.towers {
        let t2 = t1.add(&anti)?;
        if t2.deg() + t1.deg() != d {
            failures.push(format!(
                "deg {} + deg {} != {d} for {}",
                t1.deg(),
                t2.deg(),
                t1.rep.disc_label()
            ));
        }
        pairs.push((*t1, t2, t1.deg(), t2.deg()));
    }
    Ok(Conserv0Report {
        ty,
        d,
        pairs,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{FormSpec, SpaceKind};
    use crate::localfield::LocalField;

    fn q(p: u64) -> LocalField {
        LocalField::padic(p).unwrap()
    }

    #[test]
    fn orders_match_enumeration() {
        for p in [2u64, 3, 5, 7] {
            for ty in FormType::all(q(p)) {
                let tg = tower_group(ty, None).unwrap();
                let n = tg.order().unwrap();
                assert!(n.is_power_of_two(), "{}", ty.label());
                if ty.kind == SpaceKind::Symmetric && p != 2 {
                    assert_eq!(n, 16);
                }
                if ty.kind == SpaceKind::Symplectic {
                    assert_eq!(n, 1);
                }
            }
        }
    }

    #[test]
    fn conserv0_everywhere() {
        for f in [q(2), q(3), q(5), q(7), LocalField::Complex] {
            for ty in FormType::all(f) {
                if ty.model() == Model::Signature {
                    continue;
                }
                let r = check_conserv0(ty).unwrap();
                assert!(r.passed(), "{}: {:?}", ty.label(), r.failures);
            }
        }
    }

    #[test]
    fn symmetric_q3_pairs() {
        let ty = FormType::new(SpaceKind::Symmetric, q(3), None).unwrap();
        let r = check_conserv0(ty).unwrap();
        let mut degs: Vec<(i64, i64)> = r.pairs.iter().map(|p| (p.2, p.3)).collect();
        degs.sort();
        degs.dedup();
        assert_eq!(degs, vec![(0, 4), (1, 3), (2, 2), (3, 1), (4, 0)]);
        assert_eq!(anti_split_tower0(ty).unwrap().deg(), 4);
    }

    #[test]
    fn towers_are_translation_invariant() {
        let ty = FormType::new(SpaceKind::Symmetric, q(5), None).unwrap();
        let c = crate::forms::invariants(&FormSpec::diagonal(ty, vec![1, 2, 5]).unwrap()).unwrap();
        let t = tower_of(&c).unwrap();
        assert_eq!(tower_of(&c.add(&hyperbolic_plane(ty)).unwrap()).unwrap(), t);
        let tg = tower_group(ty, None).unwrap();
        assert_eq!(tg.tower_at(&tg.elem(&t).unwrap()).unwrap(), t);
    }

    #[test]
    fn real_towers_indexed_by_signature() {
        let ty = FormType::new(SpaceKind::Symmetric, LocalField::Real, None).unwrap();
        let tg = tower_group(ty, Some(3)).unwrap();
        assert_eq!(tg.group.free_rank(), 1);
        assert_eq!(tg.towers.len(), 7);
        let far = tg.tower_at(&tg.group.normalize(&[5])).unwrap();
        assert_eq!(far.deg(), 5);
    }
}
