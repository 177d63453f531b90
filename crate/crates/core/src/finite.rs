//! Finite groups as Cayley tables, with automorphism data for a cyclic
//! symmetry group. Used by the exact enumeration oracles and the finite
//! bitorsor machinery.

use serde::{Deserialize, Serialize};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FiniteError {
    #[error("bad Cayley table: {0}")]
    BadTable(String),
    #[error("bad automorphism data: {0}")]
    BadAut(String),
}

/// Group given by its multiplication table. `table[a][b]` is the index of
/// a·b. `gamma_images`, when present, lists one permutation per element of
/// a cyclic symmetry group Z/m (row 0 = identity), each an automorphism.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FiniteGroup {
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
    #[serde(default)]
    pub gamma_images: Vec<Vec<usize>>,
    #[serde(skip)]
    pub inverse: Vec<usize>,
    #[serde(skip)]
    pub identity: usize,
}

impl FiniteGroup {
    pub fn from_table(
        elements: Vec<String>,
        table: Vec<Vec<usize>>,
        gamma_images: Vec<Vec<usize>>,
    ) -> Result<Arc<Self>, FiniteError> {
        let mut g = FiniteGroup {
            elements,
            table,
            gamma_images,
            inverse: vec![],
            identity: 0,
        };
        g.finish()?;
        Ok(Arc::new(g))
    }

    pub fn from_json(text: &str) -> Result<Arc<Self>, FiniteError> {
        let mut g: FiniteGroup =
            serde_json::from_str(text).map_err(|e| FiniteError::BadTable(e.to_string()))?;
        g.finish()?;
        Ok(Arc::new(g))
    }

    /// Validate the table, locate the identity, fill inverses, and check
    /// that each gamma row is an automorphism and the rows form a Z/m.
    pub fn finish(&mut self) -> Result<(), FiniteError> {
        let n = self.elements.len();
        if self.table.len() != n || self.table.iter().any(|r| r.len() != n) {
            return Err(FiniteError::BadTable("table shape".into()));
        }
        if self
            .table
            .iter()
            .flatten()
            .any(|&v| v >= n)
        {
            return Err(FiniteError::BadTable("index out of range".into()));
        }
        // identity
        let mut id = None;
        for e in 0..n {
            if (0..n).all(|a| self.table[e][a] == a && self.table[a][e] == a) {
                id = Some(e);
                break;
            }
        }
        let id = id.ok_or_else(|| FiniteError::BadTable("no identity".into()))?;
        self.identity = id;
        // associativity (n is small here)
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                        return Err(FiniteError::BadTable("not associative".into()));
                    }
                }
            }
        }
        // inverses
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if self.table[a][b] == id && self.table[b][a] == id {
                    inv[a] = b;
                }
            }
            if inv[a] == usize::MAX {
                return Err(FiniteError::BadTable(format!("element {a} has no inverse")));
            }
        }
        self.inverse = inv;
        // gamma rows
        if !self.gamma_images.is_empty() {
            let m = self.gamma_images.len();
            for (l, row) in self.gamma_images.iter().enumerate() {
                if row.len() != n {
                    return Err(FiniteError::BadAut(format!("row {l} wrong length")));
                }
                let mut seen = vec![false; n];
                for &v in row {
                    if v >= n || seen[v] {
                        return Err(FiniteError::BadAut(format!("row {l} not a bijection")));
                    }
                    seen[v] = true;
                }
                for a in 0..n {
                    for b in 0..n {
                        if row[self.table[a][b]] != self.table[row[a]][row[b]] {
                            return Err(FiniteError::BadAut(format!("row {l} not a homomorphism")));
                        }
                    }
                }
            }
            // row 0 identity, row l = row 1 applied l times (cyclic)
            if (0..self.elements.len()).any(|a| self.gamma_images[0][a] != a) {
                return Err(FiniteError::BadAut("row 0 must be the identity".into()));
            }
            for l in 1..m {
                for a in 0..n {
                    let expect = self.gamma_images[1][self.gamma_images[l - 1][a]];
                    if self.gamma_images[l][a] != expect {
                        return Err(FiniteError::BadAut(format!(
                            "row {l} is not generator^({l})"
                        )));
                    }
                }
            }
            // generator^m = identity
            for a in 0..n {
                let mut x = a;
                for _ in 0..m {
                    x = self.gamma_images[1][x];
                }
                if x != a {
                    return Err(FiniteError::BadAut("generator order does not divide m".into()));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn gamma_order(&self) -> usize {
        if self.gamma_images.is_empty() {
            1
        } else {
            self.gamma_images.len()
        }
    }

    /// Action of the Z/m element `l` (reduced mod m) on `a`.
    pub fn gamma_act(&self, l: i64, a: usize) -> usize {
        let m = self.gamma_order() as i64;
        let l = l.rem_euclid(m) as usize;
        if self.gamma_images.is_empty() {
            a
        } else {
            self.gamma_images[l][a]
        }
    }

    /// The cyclic group Z/m as a Cayley table, optionally with the
    /// inversion action of Z/2 (only an automorphism, m > 2 nontrivial).
    pub fn cyclic(m: usize, with_inversion_z2: bool) -> Arc<Self> {
        let elements = (0..m).map(|i| format!("{i}")).collect();
        let table = (0..m)
            .map(|a| (0..m).map(|b| (a + b) % m).collect())
            .collect();
        let gamma_images = if with_inversion_z2 {
            vec![
                (0..m).collect(),
                (0..m).map(|a| (m - a) % m).collect(),
            ]
        } else {
            vec![]
        };
        Self::from_table(elements, table, gamma_images).expect("cyclic group table")
    }

    /// The symmetric group S3, elements as permutations of {0,1,2} in
    /// one-line notation; optional Z/2 action by conjugation with a
    /// transposition, or Z/3 action by conjugation with a 3-cycle.
    pub fn s3(gamma: S3Gamma) -> Arc<Self> {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
        ];
        let compose = |p: &[usize; 3], q: &[usize; 3]| -> [usize; 3] {
            // (p∘q)(x) = p(q(x))
            [p[q[0]], p[q[1]], p[q[2]]]
        };
        let index_of = |p: &[usize; 3]| perms.iter().position(|q| q == p).unwrap();
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| perms.iter().map(|q| index_of(&compose(p, q))).collect())
            .collect();
        let elements = perms
            .iter()
            .map(|p| format!("({}{}{})", p[0], p[1], p[2]))
            .collect();
        let conj_row = |w: [usize; 3]| -> Vec<usize> {
            let winv_idx = {
                let mut winv = [0usize; 3];
                for (i, &v) in w.iter().enumerate() {
                    winv[v] = i;
                }
                winv
            };
            perms
                .iter()
                .map(|p| index_of(&compose(&w, &compose(p, &winv_idx))))
                .collect()
        };
        let gamma_images = match gamma {
            S3Gamma::None => vec![],
            S3Gamma::ConjTransposition => vec![(0..6).collect(), conj_row([1, 0, 2])],
            S3Gamma::ConjThreeCycle => {
                let c = conj_row([1, 2, 0]);
                let c2: Vec<usize> = (0..6).map(|a| c[c[a]]).collect();
                vec![(0..6).collect(), c, c2]
            }
        };
        Self::from_table(elements, table, gamma_images).expect("s3 table")
    }
}

#[derive(Debug, Clone, Copy)]
pub enum S3Gamma {
    None,
    ConjTransposition,
    ConjThreeCycle,
}

/// Element of Γ ⋉ G for cyclic Γ = Z/m acting on the finite group:
/// formal products φ·x with (φ₁,x₁)(φ₂,x₂) = (φ₁+φ₂, (−φ₂ · x₁)·x₂).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Semidirect {
    pub phi: usize,
    pub g: usize,
}

pub fn semidirect_mul(group: &FiniteGroup, a: Semidirect, b: Semidirect) -> Semidirect {
    let m = group.gamma_order();
    Semidirect {
        phi: (a.phi + b.phi) % m,
        g: group.mul(group.gamma_act(-(b.phi as i64), a.g), b.g),
    }
}

pub fn semidirect_identity(group: &FiniteGroup) -> Semidirect {
    Semidirect {
        phi: 0,
        g: group.identity,
    }
}

pub fn semidirect_inv(group: &FiniteGroup, a: Semidirect) -> Semidirect {
    let m = group.gamma_order();
    let phi_inv = (m - a.phi) % m;
    Semidirect {
        phi: phi_inv,
        g: group.inv(group.gamma_act(a.phi as i64, a.g)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_tables_are_groups() {
        let z3 = FiniteGroup::cyclic(3, true);
        assert_eq!(z3.len(), 3);
        assert_eq!(z3.identity, 0);
        assert_eq!(z3.mul(1, 2), 0);
        assert_eq!(z3.inv(1), 2);
        // inversion action: 1 ↦ 2
        assert_eq!(z3.gamma_act(1, 1), 2);
        assert_eq!(z3.gamma_order(), 2);
    }

    #[test]
    fn s3_has_expected_structure() {
        let s3 = FiniteGroup::s3(S3Gamma::ConjTransposition);
        assert_eq!(s3.len(), 6);
        // order-2 and order-3 elements exist
        let orders: Vec<usize> = (0..6)
            .map(|a| {
                let mut x = a;
                let mut k = 1;
                while x != s3.identity {
                    x = s3.mul(x, a);
                    k += 1;
                }
                k
            })
            .collect();
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 3);
        assert_eq!(orders.iter().filter(|&&o| o == 3).count(), 2);
    }

    #[test]
    fn s3_z3_action_is_valid() {
        let s3 = FiniteGroup::s3(S3Gamma::ConjThreeCycle);
        assert_eq!(s3.gamma_order(), 3);
    }

    #[test]
    fn semidirect_is_a_group() {
        let s3 = FiniteGroup::s3(S3Gamma::ConjTransposition);
        let m = s3.gamma_order();
        let all: Vec<Semidirect> = (0..m)
            .flat_map(|phi| (0..s3.len()).map(move |g| Semidirect { phi, g }))
            .collect();
        for &a in &all {
            let e = semidirect_identity(&s3);
            assert_eq!(semidirect_mul(&s3, a, e), a);
            assert_eq!(semidirect_mul(&s3, e, a), a);
            assert_eq!(semidirect_mul(&s3, a, semidirect_inv(&s3, a)), e);
            for &b in &all {
                for &c in &all {
                    let lhs = semidirect_mul(&s3, semidirect_mul(&s3, a, b), c);
                    let rhs = semidirect_mul(&s3, a, semidirect_mul(&s3, b, c));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let z3 = FiniteGroup::cyclic(3, true);
        let text = serde_json::to_string(&*z3).unwrap();
        let back = FiniteGroup::from_json(&text).unwrap();
        assert_eq!(back.table, z3.table);
        assert_eq!(back.inverse, z3.inverse);
    }
}
