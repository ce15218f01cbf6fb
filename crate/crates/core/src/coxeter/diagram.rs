//! Coxeter diagrams from Cartan data, and diagram automorphisms.

use serde::{Deserialize, Serialize};

use super::{CartanLike, MatrixKind};
use crate::error::{Error, Result};
use crate::golden::GoldenRat;
use crate::matrix::Matrix;

/// Edge label `m_ij`, read off from `A_ij * A_ji = 4 cos^2(pi/m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EdgeLabel {
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "3")]
    Three,
    #[serde(rename = "5")]
    Five,
    #[serde(rename = "5/2")]
    FiveHalves,
}

impl EdgeLabel {
    /// Order of `s_i s_j`; both 5 and 5/2 give 5.
    pub fn order(self) -> u32 {
        match self {
            EdgeLabel::Two => 2,
            EdgeLabel::Three => 3,
            EdgeLabel::Five | EdgeLabel::FiveHalves => 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterDiagram {
    pub labels: Vec<String>,
    /// `m[i][j]` for `i != j`; `None` on the diagonal.
    pub m: Vec<Vec<Option<EdgeLabel>>>,
}

impl CoxeterDiagram {
    /// Coxeter matrix with 1 on the diagonal.
    pub fn coxeter_matrix(&self) -> Vec<Vec<u32>> {
        self.m.iter().map(|row| row.iter().map(|e| e.map_or(1, EdgeLabel::order)).collect()).collect()
    }

    /// Edges `(i, j, label)` with `i < j` and label other than 2.
    pub fn edges(&self) -> Vec<(usize, usize, EdgeLabel)> {
        let mut out = Vec::new();
        for i in 0..self.m.len() {
            for j in i + 1..self.m.len() {
                match self.m[i][j] {
                    Some(EdgeLabel::Two) | None => {}
                    Some(l) => out.push((i, j, l)),
                }
            }
        }
        out
    }
}

pub fn cartan_to_diagram(a: &CartanLike) -> Result<CoxeterDiagram> {
    if a.kind == MatrixKind::Gram {
        return Err(Error::Invalid("expected a Cartan or bordered matrix".into()));
    }
    let e = &a.entries;
    let n = e.rows();
    let one = GoldenRat::one();
    let tau2 = GoldenRat::new(1, 1, 1);
    let sigma2 = GoldenRat::new(2, -1, 1);
    let mut m = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let p = &e[(i, j)] * &e[(j, i)];
            let label = if p.is_zero() {
                EdgeLabel::Two
            } else if p == one {
                EdgeLabel::Three
            } else if p == tau2 {
                EdgeLabel::Five
            } else if p == sigma2 {
                EdgeLabel::FiveHalves
            } else {
                return Err(Error::NonCoxeterEntry { i, j, product: p.to_string() });
            };
            m[i][j] = Some(label);
        }
    }
    Ok(CoxeterDiagram { labels: a.labels.clone(), m })
}

/// All permutations `p` with `A[p[i]][p[j]] == A[i][j]`, sorted.
pub fn diagram_automorphisms(a: &Matrix) -> Vec<Vec<usize>> {
    let n = a.rows();
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(a, 0, &mut perm, &mut used, &mut out);
    out
}

fn extend(a: &Matrix, i: usize, perm: &mut [usize], used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    let n = perm.len();
    if i == n {
        out.push(perm.to_vec());
        return;
    }
    for cand in 0..n {
        if used[cand] || a[(cand, cand)] != a[(i, i)] {
            continue;
        }
        let ok = (0..i).all(|j| a[(cand, perm[j])] == a[(i, j)] && a[(perm[j], cand)] == a[(j, i)]);
        if ok {
            perm[i] = cand;
            used[cand] = true;
            extend(a, i + 1, perm, used, out);
            used[cand] = false;
        }
    }
    perm[i] = usize::MAX;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{cartan_matrix, GroupId};

    #[test]
    fn diagrams_of_all_groups() {
        let chain = |g: GroupId| cartan_to_diagram(&cartan_matrix(g)).unwrap().edges();
        assert_eq!(
            chain(GroupId::H4),
            vec![(0, 1, EdgeLabel::Three), (1, 2, EdgeLabel::Three), (2, 3, EdgeLabel::Five)]
        );
        assert_eq!(chain(GroupId::H2), vec![(0, 1, EdgeLabel::Five)]);
        assert_eq!(chain(GroupId::H3), vec![(0, 1, EdgeLabel::Three), (1, 2, EdgeLabel::Five)]);
        let e8 = chain(GroupId::E8);
        assert_eq!(e8.len(), 7);
        assert!(e8.contains(&(4, 7, EdgeLabel::Three)));
        let d6 = chain(GroupId::D6);
        assert!(d6.contains(&(3, 5, EdgeLabel::Three)) && d6.contains(&(3, 4, EdgeLabel::Three)));
        assert_eq!(chain(GroupId::A4).len(), 3);
    }

    #[test]
    fn conjugate_h_matrices_share_the_coxeter_matrix() {
        for g in [GroupId::H2, GroupId::H3, GroupId::H4] {
            let a = cartan_matrix(g);
            let mut c = a.clone();
            c.entries = a.entries.conj();
            let d = cartan_to_diagram(&a).unwrap();
            let dc = cartan_to_diagram(&c).unwrap();
            assert!(dc.edges().iter().any(|e| e.2 == EdgeLabel::FiveHalves));
            assert_eq!(d.coxeter_matrix(), dc.coxeter_matrix());
        }
    }

    #[test]
    fn unrecognised_products_are_rejected() {
        let mut a = cartan_matrix(GroupId::A4);
        a.entries[(0, 1)] = GoldenRat::from_int(-2);
        assert!(matches!(cartan_to_diagram(&a), Err(Error::NonCoxeterEntry { .. })));
    }

    #[test]
    fn automorphism_counts() {
        let count = |g: GroupId| diagram_automorphisms(&cartan_matrix(g).entries).len();
        assert_eq!(count(GroupId::D6), 2);
        assert_eq!(count(GroupId::E8), 1);
        assert_eq!(count(GroupId::A4), 2);
        assert_eq!(count(GroupId::H4), 1);
    }
}
