//! Finite groups given by Cayley tables.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MAX_GROUP_ORDER: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order must be in 1..={MAX_GROUP_ORDER}, got {0}")]
    Order(usize),
    #[error("table row {0} has the wrong length or an out-of-range entry")]
    Malformed(usize),
    #[error("not associative on ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("no identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
}

/// A finite group: `table[g][h]` is the index of `gh`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Group {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    names: Vec<String>,
}

impl Group {
    pub fn from_table(table: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self, GroupError> {
        let m = table.len();
        if m == 0 || m > MAX_GROUP_ORDER {
            return Err(GroupError::Order(m));
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != m || row.iter().any(|&x| x >= m) {
                return Err(GroupError::Malformed(g));
            }
        }
        for g in 0..m {
            for h in 0..m {
                for k in 0..m {
                    if table[table[g][h]][k] != table[g][table[h][k]] {
                        return Err(GroupError::NotAssociative(g, h, k));
                    }
                }
            }
        }
        let identity = (0..m)
            .find(|&e| (0..m).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = Vec::with_capacity(m);
        for g in 0..m {
            let inv = (0..m)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or(GroupError::NoInverse(g))?;
            inverse.push(inv);
        }
        let names = match names {
            Some(n) if n.len() == m => n,
            _ => (0..m).map(|g| format!("g{g}")).collect(),
        };
        Ok(Group { table, identity, inverse, names })
    }

    /// `Z/m` with elements `0..m` and `names[k] = "c^k"`.
    pub fn cyclic(m: usize) -> Result<Self, GroupError> {
        let table = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
        let names = (0..m).map(|k| if k == 0 { "e".to_string() } else { format!("c^{k}") }).collect();
        Group::from_table(table, Some(names))
    }

    /// Symmetric group on `k` letters; permutations in lexicographic order
    /// of their one-line notation, composed right to left.
    pub fn symmetric(k: usize) -> Result<Self, GroupError> {
        let mut perms: Vec<Vec<usize>> = Vec::new();
        permutations(&mut (0..k).collect::<Vec<_>>(), 0, &mut perms);
        perms.sort();
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed");
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index(&b.iter().map(|&i| a[i]).collect())).collect())
            .collect();
        let names = perms
            .iter()
            .map(|p| p.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(""))
            .collect();
        Group::from_table(table, Some(names))
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

fn permutations(items: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
    if start == items.len() {
        out.push(items.clone());
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permutations(items, start + 1, out);
        items.swap(start, i);
    }
}

/// Sign of a permutation given in one-line notation.
pub fn permutation_sign(perm: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All permutations of `0..k` in lexicographic order.
pub fn all_permutations(k: usize) -> Vec<Vec<usize>> {
    let mut perms = Vec::new();
    permutations(&mut (0..k).collect(), 0, &mut perms);
    perms.sort();
    perms
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_is_a_nonabelian_group_of_order_6() {
        let g = Group::symmetric(3).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.names()[g.identity()], "123");
        let abelian = (0..6).all(|a| (0..6).all(|b| g.mul(a, b) == g.mul(b, a)));
        assert!(!abelian);
        for a in 0..6 {
            assert_eq!(g.mul(a, g.inverse(a)), g.identity());
        }
    }

    #[test]
    fn rejects_non_groups() {
        assert_eq!(Group::from_table(vec![vec![0, 0], vec![0, 0]], None), Err(GroupError::NoIdentity));
        assert!(matches!(Group::from_table(vec![vec![0, 2]], None), Err(GroupError::Malformed(0))));
        assert_eq!(Group::from_table(vec![], None), Err(GroupError::Order(0)));
    }

    #[test]
    fn signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
        assert_eq!(all_permutations(3).len(), 6);
    }
}
