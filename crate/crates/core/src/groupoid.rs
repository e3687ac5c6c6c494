//! Finite categories and groupoids given by composition tables.
//!
//! Objects and morphisms are dense indices. `compose(s, t)` is the composite
//! "s after t" and is defined exactly when `dom(s) == cod(t)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("a groupoid needs at least one object")]
    NoObjects,
    #[error("morphism index {0} out of range")]
    MorphismOutOfRange(usize),
    #[error("object index {0} out of range")]
    ObjectOutOfRange(usize),
    #[error("table shape mismatch: {0}")]
    Shape(String),
    #[error("not a valid groupoid: {0}")]
    Invalid(String),
    #[error("not a group table: {0}")]
    NotAGroup(String),
    #[error("empty list of parts")]
    EmptyUnion,
}

/// One violated category axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `compose(s, t)` is defined although `dom(s) != cod(t)`.
    DomainMismatch { s: usize, t: usize },
    /// `dom(s) == cod(t)` but no composite is recorded.
    MissingComposite { s: usize, t: usize },
    /// The composite has the wrong domain or codomain.
    CompositeEndpoints { s: usize, t: usize, st: usize },
    Associativity { s: usize, t: usize, r: usize },
    MissingIdentity { object: usize },
    IdentityLaw { morphism: usize },
    InverseLaw { morphism: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub cancellable: bool,
    pub groupoid: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A finite category, optionally with an inverse table (a groupoid).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Groupoid {
    objects: usize,
    dom: Vec<usize>,
    cod: Vec<usize>,
    compose: Vec<Vec<Option<usize>>>,
    inverse: Option<Vec<usize>>,
    identity_of: Vec<Option<usize>>,
    names: Option<Vec<String>>,
}

/// JSON fixture layout.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupoidFixture {
    pub objects: usize,
    pub morphisms: usize,
    pub dom: Vec<usize>,
    pub cod: Vec<usize>,
    pub compose: Vec<Vec<Option<usize>>>,
    pub inverse: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl Groupoid {
    /// Builds a category from raw tables. Only shapes and index ranges are
    /// checked here; the axioms are checked by [`Groupoid::validate`].
    pub fn new(
        objects: usize,
        dom: Vec<usize>,
        cod: Vec<usize>,
        compose: Vec<Vec<Option<usize>>>,
        inverse: Option<Vec<usize>>,
    ) -> Result<Groupoid, GroupoidError> {
        if objects == 0 {
            return Err(GroupoidError::NoObjects);
        }
        let m = dom.len();
        if cod.len() != m {
            return Err(GroupoidError::Shape(format!(
                "dom has {m} entries, cod has {}",
                cod.len()
            )));
        }
        if let Some(&o) = dom.iter().chain(&cod).find(|&&o| o >= objects) {
            return Err(GroupoidError::ObjectOutOfRange(o));
        }
        if compose.len() != m || compose.iter().any(|row| row.len() != m) {
            return Err(GroupoidError::Shape(format!("compose table must be {m}x{m}")));
        }
        if let Some(&k) = compose.iter().flatten().flatten().find(|&&k| k >= m) {
            return Err(GroupoidError::MorphismOutOfRange(k));
        }
        if let Some(inv) = &inverse {
            if inv.len() != m {
                return Err(GroupoidError::Shape(format!(
                    "inverse table has {} entries, expected {m}",
                    inv.len()
                )));
            }
            if let Some(&k) = inv.iter().find(|&&k| k >= m) {
                return Err(GroupoidError::MorphismOutOfRange(k));
            }
        }
        let mut g = Groupoid {
            objects,
            dom,
            cod,
            compose,
            inverse,
            identity_of: Vec::new(),
            names: None,
        };
        g.identity_of = (0..objects).map(|o| g.find_identity(o)).collect();
        Ok(g)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Groupoid, GroupoidError> {
        if names.len() != self.morphisms() {
            return Err(GroupoidError::Shape("one name per morphism required".into()));
        }
        self.names = Some(names);
        Ok(self)
    }

    fn find_identity(&self, o: usize) -> Option<usize> {
        (0..self.morphisms()).find(|&m| {
            self.dom[m] == o
                && self.cod[m] == o
                && (0..self.morphisms()).all(|t| {
                    (self.cod[t] != o || self.compose[m][t] == Some(t))
                        && (self.dom[t] != o || self.compose[t][m] == Some(t))
                })
        })
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn morphisms(&self) -> usize {
        self.dom.len()
    }

    pub fn dom(&self, s: usize) -> usize {
        self.dom[s]
    }

    pub fn cod(&self, s: usize) -> usize {
        self.cod[s]
    }

    pub fn identity(&self, object: usize) -> Option<usize> {
        self.identity_of[object]
    }

    /// Identity morphism of `object`; panics on an unvalidated category
    /// without one.
    pub fn id(&self, object: usize) -> usize {
        self.identity_of[object].expect("object has an identity morphism")
    }

    pub fn is_identity(&self, s: usize) -> bool {
        self.identity_of[self.dom[s]] == Some(s)
    }

    pub fn is_endo(&self, s: usize) -> bool {
        self.dom[s] == self.cod[s]
    }

    pub fn inverse(&self, s: usize) -> Option<usize> {
        self.inverse.as_ref().map(|inv| inv[s])
    }

    pub fn has_inverses(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn name(&self, s: usize) -> String {
        match &self.names {
            Some(n) => n[s].clone(),
            None => format!("m{s}"),
        }
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// `compose(s, t)` = s∘t when defined.
    pub fn compose(&self, s: usize, t: usize) -> Option<usize> {
        self.compose[s][t]
    }

    pub fn composable(&self, s: usize, t: usize) -> Result<bool, GroupoidError> {
        let m = self.morphisms();
        for x in [s, t] {
            if x >= m {
                return Err(GroupoidError::MorphismOutOfRange(x));
            }
        }
        Ok(self.dom[s] == self.cod[t])
    }

    /// Checks every category axiom and reports cancellability.
    pub fn validate(&self) -> ValidationReport {
        let m = self.morphisms();
        let mut v = Vec::new();
        for s in 0..m {
            for t in 0..m {
                match (self.dom[s] == self.cod[t], self.compose[s][t]) {
                    (false, Some(_)) => v.push(Violation::DomainMismatch { s, t }),
                    (true, None) => v.push(Violation::MissingComposite { s, t }),
                    (true, Some(st)) => {
                        if self.dom[st] != self.dom[t] || self.cod[st] != self.cod[s] {
                            v.push(Violation::CompositeEndpoints { s, t, st });
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for s in 0..m {
            for t in 0..m {
                let Some(st) = self.compose[s][t] else { continue };
                for r in 0..m {
                    let Some(tr) = self.compose[t][r] else { continue };
                    if self.compose[st][r] != self.compose[s][tr] {
                        v.push(Violation::Associativity { s, t, r });
                    }
                }
            }
        }
        for o in 0..self.objects {
            if self.identity_of[o].is_none() {
                v.push(Violation::MissingIdentity { object: o });
            }
        }
        // Identity laws for every morphism against its endpoint identities.
        for s in 0..m {
            let left = self.identity_of[self.cod[s]].map(|e| self.compose[e][s]);
            let right = self.identity_of[self.dom[s]].map(|e| self.compose[s][e]);
            if matches!(left, Some(x) if x != Some(s)) || matches!(right, Some(x) if x != Some(s)) {
                v.push(Violation::IdentityLaw { morphism: s });
            }
        }
        if let Some(inv) = &self.inverse {
            for s in 0..m {
                let i = inv[s];
                let ok = self.compose[s][i].is_some()
                    && self.compose[s][i] == self.identity_of[self.cod[s]]
                    && self.compose[i][s] == self.identity_of[self.dom[s]];
                if !ok {
                    v.push(Violation::InverseLaw { morphism: s });
                }
            }
        }
        let groupoid = self.inverse.is_some() && !v.iter().any(|x| matches!(x, Violation::InverseLaw { .. }));
        ValidationReport {
            violations: v,
            cancellable: self.is_cancellable(),
            groupoid,
        }
    }

    /// Left and right cancellation on the composition table.
    pub fn is_cancellable(&self) -> bool {
        let m = self.morphisms();
        for s in 0..m {
            for t in 0..m {
                for u in (t + 1)..m {
                    // s∘t = s∘u  ⇒  t = u
                    if let (Some(a), Some(b)) = (self.compose[s][t], self.compose[s][u]) {
                        if a == b {
                            return false;
                        }
                    }
                    // t∘s = u∘s  ⇒  t = u
                    if let (Some(a), Some(b)) = (self.compose[t][s], self.compose[u][s]) {
                        if a == b {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn require_valid_groupoid(&self) -> Result<(), GroupoidError> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(GroupoidError::Invalid(format!("{:?}", report.violations)));
        }
        if !report.groupoid {
            return Err(GroupoidError::Invalid("no inverse table".into()));
        }
        Ok(())
    }

    /// The full subcategory on `objects` (in the given order), together with
    /// the original indices of its morphisms.
    pub fn restrict(&self, objects: &[usize]) -> (Groupoid, Vec<usize>) {
        let mut obj_map = vec![None; self.objects];
        for (i, &o) in objects.iter().enumerate() {
            obj_map[o] = Some(i);
        }
        let kept: Vec<usize> = (0..self.morphisms())
            .filter(|&s| obj_map[self.dom[s]].is_some() && obj_map[self.cod[s]].is_some())
            .collect();
        let mut mor_map = vec![None; self.morphisms()];
        for (i, &s) in kept.iter().enumerate() {
            mor_map[s] = Some(i);
        }
        let dom = kept.iter().map(|&s| obj_map[self.dom[s]].unwrap()).collect();
        let cod = kept.iter().map(|&s| obj_map[self.cod[s]].unwrap()).collect();
        let compose = kept
            .iter()
            .map(|&s| {
                kept.iter()
                    .map(|&t| self.compose[s][t].and_then(|st| mor_map[st]))
                    .collect()
            })
            .collect();
        let inverse = self
            .inverse
            .as_ref()
            .map(|inv| kept.iter().map(|&s| mor_map[inv[s]].expect("inverse inside subgroupoid")).collect());
        let mut g = Groupoid::new(objects.len(), dom, cod, compose, inverse).expect("restriction is well-shaped");
        if let Some(names) = &self.names {
            g.names = Some(kept.iter().map(|&s| names[s].clone()).collect());
        }
        (g, kept)
    }

    /// Partition of the objects into connected classes (objects joined by a
    /// morphism), each with its full subgroupoid and morphism index map.
    pub fn connected_components(&self) -> Result<Vec<Component>, GroupoidError> {
        self.require_valid_groupoid()?;
        let mut parent: Vec<usize> = (0..self.objects).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for s in 0..self.morphisms() {
            let a = find(&mut parent, self.dom[s]);
            let b = find(&mut parent, self.cod[s]);
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                parent[hi] = lo;
            }
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of_root = vec![None; self.objects];
        for o in 0..self.objects {
            let r = find(&mut parent, o);
            let idx = *class_of_root[r].get_or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[idx].push(o);
        }
        Ok(classes
            .into_iter()
            .map(|objects| {
                let (groupoid, morphisms) = self.restrict(&objects);
                Component {
                    objects,
                    morphisms,
                    groupoid,
                }
            })
            .collect())
    }

    pub fn to_fixture(&self) -> GroupoidFixture {
        GroupoidFixture {
            objects: self.objects,
            morphisms: self.morphisms(),
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            compose: self.compose.clone(),
            inverse: self.inverse.clone(),
            names: self.names.clone(),
        }
    }

    pub fn from_fixture(f: &GroupoidFixture) -> Result<Groupoid, GroupoidError> {
        if f.dom.len() != f.morphisms {
            return Err(GroupoidError::Shape(format!(
                "declared {} morphisms, dom has {}",
                f.morphisms,
                f.dom.len()
            )));
        }
        let g = Groupoid::new(f.objects, f.dom.clone(), f.cod.clone(), f.compose.clone(), f.inverse.clone())?;
        match &f.names {
            Some(n) => g.with_names(n.clone()),
            None => Ok(g),
        }
    }
}

/// One connected piece of a groupoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Original object indices, ascending.
    pub objects: Vec<usize>,
    /// Original morphism indices, ascending; position = index in `groupoid`.
    pub morphisms: Vec<usize>,
    pub groupoid: Groupoid,
}

/// The thin connected groupoid on `k` objects: exactly one morphism
/// `d -> c` for every ordered pair, stored at index `c * k + d`.
///
/// For `k = 2` the morphisms are, in order, `e`, `s: f -> e`, `t: e -> f`
/// and `f`.
pub fn build_thin_connected(k: usize) -> Result<Groupoid, GroupoidError> {
    if k == 0 {
        return Err(GroupoidError::NoObjects);
    }
    let idx = |c: usize, d: usize| c * k + d;
    let m = k * k;
    let mut dom = vec![0; m];
    let mut cod = vec![0; m];
    let mut compose = vec![vec![None; m]; m];
    let mut inverse = vec![0; m];
    for c in 0..k {
        for d in 0..k {
            let s = idx(c, d);
            dom[s] = d;
            cod[s] = c;
            inverse[s] = idx(d, c);
            for d2 in 0..k {
                compose[s][idx(d, d2)] = Some(idx(c, d2));
            }
        }
    }
    let g = Groupoid::new(k, dom, cod, compose, Some(inverse))?;
    if k == 2 {
        return g.with_names(vec!["e".into(), "s".into(), "t".into(), "f".into()]);
    }
    Ok(g)
}

/// One-object groupoid from a Cayley table `table[a][b] = a·b`.
pub fn build_group(table: &[Vec<usize>]) -> Result<Groupoid, GroupoidError> {
    let n = table.len();
    if n == 0 {
        return Err(GroupoidError::NotAGroup("empty table".into()));
    }
    if table.iter().any(|row| row.len() != n) {
        return Err(GroupoidError::NotAGroup("table is not square".into()));
    }
    if let Some(&x) = table.iter().flatten().find(|&&x| x >= n) {
        return Err(GroupoidError::MorphismOutOfRange(x));
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(GroupoidError::NotAGroup(format!("not associative at ({a}, {b}, {c})")));
                }
            }
        }
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| GroupoidError::NotAGroup("no identity element".into()))?;
    let mut inverse = Vec::with_capacity(n);
    for a in 0..n {
        let inv = (0..n)
            .find(|&b| table[a][b] == e && table[b][a] == e)
            .ok_or_else(|| GroupoidError::NotAGroup(format!("element {a} has no inverse")))?;
        inverse.push(inv);
    }
    let compose = table.iter().map(|row| row.iter().map(|&x| Some(x)).collect()).collect();
    Groupoid::new(1, vec![0; n], vec![0; n], compose, Some(inverse))
}

/// Cayley table of the cyclic group Z/n.
pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
}

/// Reindexed disjoint union with no morphisms between parts.
pub fn disjoint_union(parts: &[Groupoid]) -> Result<Groupoid, GroupoidError> {
    if parts.is_empty() {
        return Err(GroupoidError::EmptyUnion);
    }
    let total: usize = parts.iter().map(Groupoid::morphisms).sum();
    let objects: usize = parts.iter().map(Groupoid::objects).sum();
    let mut dom = Vec::with_capacity(total);
    let mut cod = Vec::with_capacity(total);
    let mut compose = vec![vec![None; total]; total];
    let mut inverse = Some(Vec::with_capacity(total));
    let mut names = Some(Vec::with_capacity(total));
    let (mut mo, mut oo) = (0, 0);
    for p in parts {
        let m = p.morphisms();
        dom.extend(p.dom.iter().map(|&d| d + oo));
        cod.extend(p.cod.iter().map(|&c| c + oo));
        for s in 0..m {
            for t in 0..m {
                compose[mo + s][mo + t] = p.compose[s][t].map(|x| x + mo);
            }
        }
        match (&mut inverse, &p.inverse) {
            (Some(all), Some(inv)) => all.extend(inv.iter().map(|&i| i + mo)),
            _ => inverse = None,
        }
        match (&mut names, &p.names) {
            (Some(all), Some(n)) => all.extend(n.iter().cloned()),
            _ => names = None,
        }
        mo += m;
        oo += p.objects();
    }
    let g = Groupoid::new(objects, dom, cod, compose, inverse)?;
    match names {
        // Names may collide across parts; only keep them when unique.
        Some(n) if n.iter().collect::<std::collections::HashSet<_>>().len() == n.len() => g.with_names(n),
        _ => Ok(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2() -> Groupoid {
        build_thin_connected(2).unwrap()
    }

    fn s3_table() -> Vec<Vec<usize>> {
        // Permutations of {0,1,2} as image arrays; product a·b = a∘b.
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        perms
            .iter()
            .map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect()
    }

    #[test]
    fn g2_relations() {
        let g = g2();
        let (e, s, t, f) = (0, 1, 2, 3);
        assert_eq!(g.compose(e, e), Some(e));
        assert_eq!(g.compose(f, f), Some(f));
        assert_eq!(g.compose(e, s), Some(s));
        assert_eq!(g.compose(t, e), Some(t));
        assert_eq!(g.compose(s, f), Some(s));
        assert_eq!(g.compose(f, t), Some(t));
        assert_eq!(g.compose(s, t), Some(e));
        assert_eq!(g.compose(t, s), Some(f));
        let r = g.validate();
        assert!(r.is_valid(), "{:?}", r.violations);
        assert!(r.groupoid && r.cancellable);
    }

    #[test]
    fn trivial_group_validates() {
        let g = build_group(&cyclic_table(1)).unwrap();
        assert_eq!((g.objects(), g.morphisms()), (1, 1));
        assert!(g.validate().is_valid());
        assert_eq!(build_thin_connected(1).unwrap().morphisms(), 1);
    }

    #[test]
    fn composable_examples() {
        let g = g2();
        assert!(g.composable(1, 2).unwrap());
        assert!(!g.composable(1, 1).unwrap());
        assert!(g.composable(0, 0).unwrap());
        assert_eq!(g.composable(0, 9), Err(GroupoidError::MorphismOutOfRange(9)));
    }

    #[test]
    fn domain_mismatch_is_reported() {
        let mut f = g2().to_fixture();
        f.compose[1][1] = Some(1);
        let g = Groupoid::from_fixture(&f).unwrap();
        assert!(g.validate().violations.contains(&Violation::DomainMismatch { s: 1, t: 1 }));
    }

    #[test]
    fn associativity_violation_is_reported() {
        // A 2-element "group" table with a broken product.
        let compose = vec![vec![Some(0), Some(1)], vec![Some(1), Some(1)]];
        let g = Groupoid::new(1, vec![0, 0], vec![0, 0], compose, None).unwrap();
        let r = g.validate();
        assert!(r.is_valid(), "the table is a monoid, so the axioms hold");
        assert!(!r.cancellable);
        assert!(!r.groupoid);
        let bad = vec![vec![Some(1), Some(0)], vec![Some(0), Some(0)]];
        let g = Groupoid::new(1, vec![0, 0], vec![0, 0], bad, None).unwrap();
        let r = g.validate();
        assert!(r.violations.iter().any(|v| matches!(v, Violation::MissingIdentity { .. })));
        assert!(r.violations.iter().any(|v| matches!(v, Violation::Associativity { .. })));
    }

    #[test]
    fn groups_from_tables() {
        let z2 = build_group(&cyclic_table(2)).unwrap();
        assert_eq!((z2.objects(), z2.morphisms()), (1, 2));
        assert_eq!(z2.inverse(1), Some(1));
        let s3 = build_group(&s3_table()).unwrap();
        assert_eq!(s3.morphisms(), 6);
        assert!(s3.validate().is_valid());
        let not_assoc = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 0, 1]];
        assert!(matches!(build_group(&not_assoc), Err(GroupoidError::NotAGroup(_))));
        let no_identity = vec![vec![1, 1], vec![1, 1]];
        assert!(build_group(&no_identity).is_err());
    }

    #[test]
    fn components() {
        assert_eq!(g2().connected_components().unwrap().len(), 1);
        let trivial = build_group(&cyclic_table(1)).unwrap();
        let u = disjoint_union(&[g2(), trivial.clone()]).unwrap();
        let comps = u.connected_components().unwrap();
        assert_eq!(comps.len(), 2);
        // The union drops names because the trivial part has none.
        let mut expected = g2().to_fixture();
        expected.names = None;
        assert_eq!(comps[0].groupoid.to_fixture(), expected);
        let three = disjoint_union(&[trivial.clone(), trivial.clone(), trivial]).unwrap();
        assert_eq!(three.connected_components().unwrap().len(), 3);
    }

    #[test]
    fn union_counts() {
        let z2 = build_group(&cyclic_table(2)).unwrap();
        let u = disjoint_union(&[z2.clone(), g2()]).unwrap();
        assert_eq!((u.objects(), u.morphisms()), (3, 6));
        assert!(u.validate().is_valid());
        assert_eq!(disjoint_union(std::slice::from_ref(&z2)).unwrap(), z2);
        assert_eq!(disjoint_union(&[]), Err(GroupoidError::EmptyUnion));
    }

    #[test]
    fn thin_groupoids() {
        assert_eq!(build_thin_connected(0), Err(GroupoidError::NoObjects));
        let g = build_thin_connected(3).unwrap();
        assert_eq!(g.morphisms(), 9);
        let r = g.validate();
        assert!(r.is_valid() && r.cancellable && r.groupoid);
    }
}
