//! Supports and the connection relations on them.
//!
//! A connection from `g` to `g'` is a sequence `g = g_1, g_2, ..., g_n` of
//! elements of `Σ^± ∪ Λ^±` whose partial products `g_1 ⋯ g_i` (`i < n`) stay
//! in an allowed state set and whose full product is `g'` or `g'^{-1}`. On
//! the `L` side the states are `Σ^±`; on the `A` side they are
//! `Λ^± ∪ Σ^±`. Connectivity is decided by breadth-first search over
//! states; witness paths can be replayed against the literal definition.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::algebra::AlgebraInstance;
use crate::group::{GroupElement, GroupSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// Connections in `Σ_G`, the support of `L`.
    L,
    /// Connections in `Λ_G`, the support of `A`.
    A,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::L => "L",
            Side::A => "A",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConnectionError {
    #[error("{element} is not in the {side} support")]
    NotInSupport { side: Side, element: GroupElement },
    #[error("the identity cannot belong to a support")]
    IdentityInSupport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Supports {
    pub group: GroupSpec,
    pub sigma: BTreeSet<GroupElement>,
    pub lambda: BTreeSet<GroupElement>,
    pub sigma_pm: BTreeSet<GroupElement>,
    pub lambda_pm: BTreeSet<GroupElement>,
}

/// A connection `[start, multipliers...]` ending at `target` or its inverse.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConnectionPath {
    pub start: GroupElement,
    pub multipliers: Vec<GroupElement>,
    pub target: GroupElement,
}

impl ConnectionPath {
    /// The full sequence `g_1, ..., g_n`.
    pub fn sequence(&self) -> Vec<GroupElement> {
        std::iter::once(self.start.clone())
            .chain(self.multipliers.iter().cloned())
            .collect()
    }

    /// Checks the defining conditions literally.
    pub fn replay(&self, supports: &Supports, side: Side) -> bool {
        let group = &supports.group;
        let allowed = supports.multipliers();
        let states = supports.states(side);
        if !supports.support(side).contains(&self.start)
            || !supports.support(side).contains(&self.target)
        {
            return false;
        }
        let sequence = self.sequence();
        if !sequence.iter().all(|g| allowed.contains(g)) {
            return false;
        }
        let mut partial = group.identity();
        for (i, g) in sequence.iter().enumerate() {
            partial = group.mul_unchecked(&partial, g);
            if i + 1 < sequence.len() && !states.contains(&partial) {
                return false;
            }
        }
        partial == self.target || partial == group.inv_unchecked(&self.target)
    }
}

impl fmt::Display for ConnectionPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sequence().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Equivalence classes of one support, ordered by minimal element, with a
/// witness path from each class minimum to every other member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectionPartition {
    pub side: Side,
    pub classes: Vec<BTreeSet<GroupElement>>,
    pub witnesses: BTreeMap<(GroupElement, GroupElement), ConnectionPath>,
}

impl ConnectionPartition {
    pub fn class_of(&self, g: &GroupElement) -> Option<&BTreeSet<GroupElement>> {
        self.classes.iter().find(|c| c.contains(g))
    }

    pub fn is_class(&self, cls: &BTreeSet<GroupElement>) -> bool {
        self.classes.iter().any(|c| c == cls)
    }
}

struct Exploration {
    /// Discovered states with the state they were reached from and the multiplier.
    parent: BTreeMap<GroupElement, Option<(GroupElement, GroupElement)>>,
}

impl Exploration {
    fn path_to(&self, g: &GroupElement) -> Vec<GroupElement> {
        let mut multipliers = Vec::new();
        let mut cur = g.clone();
        while let Some(Some((prev, m))) = self.parent.get(&cur) {
            multipliers.push(m.clone());
            cur = prev.clone();
        }
        multipliers.reverse();
        multipliers
    }
}

fn symmetrize(group: &GroupSpec, set: &BTreeSet<GroupElement>) -> BTreeSet<GroupElement> {
    set.iter()
        .flat_map(|g| [g.clone(), group.inv_unchecked(g)])
        .collect()
}

impl Supports {
    pub fn new(
        group: GroupSpec,
        sigma: BTreeSet<GroupElement>,
        lambda: BTreeSet<GroupElement>,
    ) -> Result<Self, ConnectionError> {
        if sigma.iter().chain(&lambda).any(GroupElement::is_identity) {
            return Err(ConnectionError::IdentityInSupport);
        }
        let sigma_pm = symmetrize(&group, &sigma);
        let lambda_pm = symmetrize(&group, &lambda);
        Ok(Supports {
            group,
            sigma,
            lambda,
            sigma_pm,
            lambda_pm,
        })
    }

    /// `Σ_G` and `Λ_G`: non-identity grades with nonzero components.
    pub fn of(inst: &AlgebraInstance) -> Self {
        Supports::new(inst.group().clone(), inst.l.support(), inst.a.support())
            .expect("supports exclude the identity")
    }

    pub fn support(&self, side: Side) -> &BTreeSet<GroupElement> {
        match side {
            Side::L => &self.sigma,
            Side::A => &self.lambda,
        }
    }

    /// `Σ^± ∪ Λ^±`.
    pub fn multipliers(&self) -> BTreeSet<GroupElement> {
        self.sigma_pm.union(&self.lambda_pm).cloned().collect()
    }

    /// Allowed partial products: `Σ^±` for `L`, `Λ^± ∪ Σ^±` for `A`.
    pub fn states(&self, side: Side) -> BTreeSet<GroupElement> {
        match side {
            Side::L => self.sigma_pm.clone(),
            Side::A => self.multipliers(),
        }
    }

    fn require(&self, side: Side, g: &GroupElement) -> Result<(), ConnectionError> {
        if self.support(side).contains(g) {
            Ok(())
        } else {
            Err(ConnectionError::NotInSupport {
                side,
                element: g.clone(),
            })
        }
    }

    fn explore(&self, side: Side, g: &GroupElement) -> Exploration {
        let states = self.states(side);
        let moves = self.multipliers();
        let mut parent = BTreeMap::new();
        parent.insert(g.clone(), None);
        let mut queue = VecDeque::from([g.clone()]);
        while let Some(cur) = queue.pop_front() {
            for m in &moves {
                let next = self.group.mul_unchecked(&cur, m);
                if states.contains(&next) && !parent.contains_key(&next) {
                    parent.insert(next.clone(), Some((cur.clone(), m.clone())));
                    queue.push_back(next);
                }
            }
        }
        Exploration { parent }
    }

    /// All states reachable from `g`, including `g`.
    pub fn reachable(
        &self,
        side: Side,
        g: &GroupElement,
    ) -> Result<BTreeSet<GroupElement>, ConnectionError> {
        self.require(side, g)?;
        Ok(self.explore(side, g).parent.into_keys().collect())
    }

    /// A witness connection from `g` to `g2`, if they are connected.
    pub fn connected(
        &self,
        side: Side,
        g: &GroupElement,
        g2: &GroupElement,
    ) -> Result<Option<ConnectionPath>, ConnectionError> {
        self.require(side, g)?;
        self.require(side, g2)?;
        Ok(self.witness(&self.explore(side, g), g, g2))
    }

    fn witness(
        &self,
        exploration: &Exploration,
        g: &GroupElement,
        g2: &GroupElement,
    ) -> Option<ConnectionPath> {
        let inverse = self.group.inv_unchecked(g2);
        let end = [g2, &inverse]
            .into_iter()
            .find(|x| exploration.parent.contains_key(*x))?;
        Some(ConnectionPath {
            start: g.clone(),
            multipliers: exploration.path_to(end),
            target: g2.clone(),
        })
    }

    /// The partition of `Σ_G` (side `L`) or `Λ_G` (side `A`).
    pub fn classes(&self, side: Side) -> ConnectionPartition {
        let mut classes = Vec::new();
        let mut witnesses = BTreeMap::new();
        let mut assigned = BTreeSet::new();
        for g in self.support(side) {
            if assigned.contains(g) {
                continue;
            }
            let exploration = self.explore(side, g);
            let mut class = BTreeSet::new();
            for g2 in self.support(side) {
                if let Some(path) = self.witness(&exploration, g, g2) {
                    class.insert(g2.clone());
                    if g2 != g {
                        witnesses.insert((g.clone(), g2.clone()), path);
                    }
                }
            }
            assigned.extend(class.iter().cloned());
            classes.push(class);
        }
        ConnectionPartition {
            side,
            classes,
            witnesses,
        }
    }

    /// DOT digraph of a partition: one cluster per class, BFS discovery
    /// edges labelled by multiplier coordinates, dashed edges for members
    /// joined through an inverse.
    pub fn dot(&self, partition: &ConnectionPartition) -> String {
        let side = partition.side;
        let mut out = String::new();
        let graph = match side {
            Side::L => "sigma",
            Side::A => "lambda",
        };
        let _ = writeln!(out, "digraph {graph} {{");
        for (n, class) in partition.classes.iter().enumerate() {
            let rep = class.iter().next().expect("classes are nonempty");
            let _ = writeln!(out, "  subgraph cluster_{n} {{");
            let _ = writeln!(out, "    label=\"[{rep}]\";");
            for g in class {
                let _ = writeln!(out, "    \"{}\";", g.label());
            }
            let _ = writeln!(out, "  }}");
        }
        for class in &partition.classes {
            let rep = class.iter().next().expect("classes are nonempty");
            let exploration = self.explore(side, rep);
            for g in class.iter().filter(|g| *g != rep) {
                if exploration.parent.contains_key(g) {
                    // nearest discovered ancestor that is itself in the support
                    let mut anc = g.clone();
                    while let Some(Some((prev, _))) = exploration.parent.get(&anc) {
                        anc = prev.clone();
                        if class.contains(&anc) {
                            break;
                        }
                    }
                    let label = self.group.mul_unchecked(g, &self.group.inv_unchecked(&anc));
                    let _ = writeln!(
                        out,
                        "  \"{}\" -> \"{}\" [label=\"{}\"];",
                        anc.label(),
                        g.label(),
                        label.label()
                    );
                } else {
                    let _ = writeln!(
                        out,
                        "  \"{}\" -> \"{}\" [label=\"inv\", style=dashed];",
                        rep.label(),
                        g.label()
                    );
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> GroupElement {
        GroupSpec::integers().element(vec![n]).unwrap()
    }

    fn set(xs: &[i64]) -> BTreeSet<GroupElement> {
        xs.iter().map(|&x| z(x)).collect()
    }

    #[test]
    fn sl2_shape() {
        let s = Supports::new(GroupSpec::integers(), set(&[1, -1]), set(&[])).unwrap();
        assert_eq!(s.reachable(Side::L, &z(1)).unwrap(), set(&[1]));
        let path = s.connected(Side::L, &z(1), &z(-1)).unwrap().unwrap();
        assert!(path.multipliers.is_empty());
        assert!(path.replay(&s, Side::L));
        let p = s.classes(Side::L);
        assert_eq!(p.classes, vec![set(&[-1, 1])]);
        assert!(s.classes(Side::A).classes.is_empty());
    }

    #[test]
    fn singleton_support() {
        let s = Supports::new(GroupSpec::integers(), set(&[3]), set(&[])).unwrap();
        assert_eq!(s.reachable(Side::L, &z(3)).unwrap(), set(&[3]));
        assert_eq!(s.classes(Side::L).classes, vec![set(&[3])]);
    }

    #[test]
    fn errors() {
        let s = Supports::new(GroupSpec::integers(), set(&[1]), set(&[])).unwrap();
        assert!(matches!(
            s.reachable(Side::L, &z(2)),
            Err(ConnectionError::NotInSupport { .. })
        ));
        assert!(matches!(
            s.connected(Side::A, &z(1), &z(1)),
            Err(ConnectionError::NotInSupport { .. })
        ));
        assert_eq!(
            Supports::new(GroupSpec::integers(), set(&[0]), set(&[])),
            Err(ConnectionError::IdentityInSupport)
        );
    }

    #[test]
    fn lambda_side_uses_wider_states() {
        // every connection from 1 to 4 passes through ±2, which lie only in Σ^±
        let s = Supports::new(GroupSpec::integers(), set(&[2]), set(&[1, 4])).unwrap();
        let path = s.connected(Side::A, &z(1), &z(4)).unwrap().unwrap();
        assert!(path.replay(&s, Side::A));
        assert_eq!(s.classes(Side::A).classes, vec![set(&[1, 4])]);
    }

    #[test]
    fn empty_dot() {
        let s = Supports::new(GroupSpec::integers(), set(&[]), set(&[])).unwrap();
        assert_eq!(s.dot(&s.classes(Side::L)), "digraph sigma {\n}\n");
    }
}
