//! Intuitionistic-fuzzy sample scores.
//!
//! Membership is the closeness of a sample to its class centroid in the
//! Gaussian-kernel feature space; non-membership is the share of heterogeneous
//! samples among its nearest neighbours, scaled by `1 − membership`.

use serde::{Deserialize, Serialize};

use super::kernel::{gaussian_kernel, squared_distances};
use super::linalg::Mat;
use crate::error::{Error, Result};

pub const IF_NEIGHBORS: usize = 5;
const RADIUS_EPS: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IfScore {
    pub membership: f64,
    pub nonmembership: f64,
    pub score: f64,
}

impl IfScore {
    pub fn from_degrees(membership: f64, nonmembership: f64) -> Self {
        let score = if nonmembership == 0.0 {
            membership
        } else if membership <= nonmembership {
            0.0
        } else {
            (1.0 - nonmembership) / (2.0 - membership - nonmembership)
        };
        Self {
            membership,
            nonmembership,
            score,
        }
    }
}

/// Scores every row of `x`. `labels` are ±1 and `mu` is the kernel width.
pub fn if_score(x: &Mat, labels: &[f64], mu: f64) -> Result<Vec<IfScore>> {
    let n = x.nrows();
    if labels.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: labels.len(),
        });
    }
    let pos: Vec<usize> = (0..n).filter(|&i| labels[i] > 0.0).collect();
    let neg: Vec<usize> = (0..n).filter(|&i| labels[i] <= 0.0).collect();
    if pos.is_empty() || neg.is_empty() {
        return Err(Error::InvalidArgument(
            "intuitionistic fuzzy scores need both classes".into(),
        ));
    }
    let k = gaussian_kernel(x, x, mu)?;
    let mut centroid_dist = vec![0.0; n];
    let mut radius = [0.0_f64; 2];
    for (c, members) in [&pos, &neg].into_iter().enumerate() {
        let m = members.len() as f64;
        let mut within = 0.0;
        for &i in members {
            for &j in members {
                within += k[(i, j)];
            }
        }
        within /= m * m;
        for &i in members {
            let cross: f64 = members.iter().map(|&j| k[(i, j)]).sum::<f64>() / m;
            let d = (k[(i, i)] - 2.0 * cross + within).max(0.0).sqrt();
            centroid_dist[i] = d;
            radius[c] = radius[c].max(d);
        }
    }
    let d2 = squared_distances(x, x)?;
    let n_neighbors = IF_NEIGHBORS.min(n - 1);
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let class = usize::from(labels[i] <= 0.0);
        let membership = 1.0 - centroid_dist[i] / (radius[class] + RADIUS_EPS);
        order.clear();
        order.extend((0..n).filter(|&j| j != i));
        order.sort_by(|&a, &b| d2[(i, a)].total_cmp(&d2[(i, b)]).then(a.cmp(&b)));
        let hetero = order[..n_neighbors]
            .iter()
            .filter(|&&j| (labels[j] > 0.0) != (labels[i] > 0.0))
            .count();
        let rho = if n_neighbors == 0 {
            0.0
        } else {
            hetero as f64 / n_neighbors as f64
        };
        out.push(IfScore::from_degrees(membership, (1.0 - membership) * rho));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_at_centroid_scores_one() {
        // class +1 is symmetric around (0,0), which is itself a member
        let x = Mat::from_row_slice(
            6,
            2,
            &[0.0, 0.0, 1.0, 0.0, -1.0, 0.0, 5.0, 5.0, 6.0, 5.0, 5.0, 6.0],
        );
        let y = [1.0, 1.0, 1.0, -1.0, -1.0, -1.0];
        let s = if_score(&x, &y, 1.0).unwrap();
        // the kernel centroid is not a sample, so test the degenerate singleton class instead
        assert!(s.iter().all(|v| (0.0..=1.0).contains(&v.score)));
        let x1 = Mat::from_row_slice(3, 1, &[0.0, 4.0, 5.0]);
        let s1 = if_score(&x1, &[1.0, -1.0, -1.0], 1.0).unwrap();
        assert_eq!(s1[0].membership, 1.0);
        assert_eq!(s1[0].nonmembership, 0.0);
        assert_eq!(s1[0].score, 1.0);
    }

    #[test]
    fn symmetric_classes_have_equal_scores() {
        let x = Mat::from_row_slice(4, 1, &[-2.0, -1.0, 1.0, 2.0]);
        let s = if_score(&x, &[-1.0, -1.0, 1.0, 1.0], 1.5).unwrap();
        assert!((s[0].score - s[3].score).abs() < 1e-15);
        assert!((s[1].score - s[2].score).abs() < 1e-15);
    }

    #[test]
    fn score_function_branches() {
        assert_eq!(IfScore::from_degrees(0.7, 0.0).score, 0.7);
        assert_eq!(IfScore::from_degrees(0.2, 0.3).score, 0.0);
        let s = IfScore::from_degrees(0.6, 0.2).score;
        assert!((s - 0.8 / 1.2).abs() < 1e-15);
    }

    #[test]
    fn six_point_toy_matches_direct_evaluation() {
        let pts = [[0.0, 0.0], [1.0, 0.2], [0.4, 1.1], [2.0, 2.0], [2.5, 1.4], [0.9, 0.8]];
        let y = [1.0, 1.0, 1.0, -1.0, -1.0, -1.0];
        let mu = 1.3_f64;
        let x = Mat::from_fn(6, 2, |i, j| pts[i][j]);
        let got = if_score(&x, &y, mu).unwrap();

        let kern = |a: &[f64; 2], b: &[f64; 2]| {
            (-((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)) / (mu * mu)).exp()
        };
        let classes = [[0usize, 1, 2], [3, 4, 5]];
        let mut dist = [0.0; 6];
        let mut rad = [0.0f64; 2];
        for (c, members) in classes.iter().enumerate() {
            let mut kk = 0.0;
            for &a in members {
                for &b in members {
                    kk += kern(&pts[a], &pts[b]);
                }
            }
            kk /= 9.0;
            for &i in members {
                let cross = members.iter().map(|&j| kern(&pts[i], &pts[j])).sum::<f64>() / 3.0;
                dist[i] = (1.0 - 2.0 * cross + kk).sqrt();
                rad[c] = rad[c].max(dist[i]);
            }
        }
        for i in 0..6 {
            let c = if y[i] > 0.0 { 0 } else { 1 };
            let mem = 1.0 - dist[i] / (rad[c] + 1e-8);
            // all five other points are neighbours
            let hetero = (0..6).filter(|&j| j != i && y[j] != y[i]).count() as f64;
            let non = (1.0 - mem) * hetero / 5.0;
            let expect = if non == 0.0 {
                mem
            } else if mem <= non {
                0.0
            } else {
                (1.0 - non) / (2.0 - mem - non)
            };
            assert!((got[i].membership - mem).abs() < 1e-12);
            assert!((got[i].nonmembership - non).abs() < 1e-12);
            assert!((got[i].score - expect).abs() < 1e-12, "sample {i}");
        }
    }

    #[test]
    fn needs_both_classes() {
        let x = Mat::zeros(3, 1);
        assert!(if_score(&x, &[1.0, 1.0, 1.0], 1.0).is_err());
    }
}
