//! Standard bodies used by tests, examples and the CLI.

use super::body::ConvexBody;
use crate::linalg::Point;

/// `[0,1]^d`.
pub fn cube(d: usize) -> ConvexBody {
    boxed(&vec![1.0; d])
}

/// `[0,l_1] x ... x [0,l_d]`.
pub fn boxed(lengths: &[f64]) -> ConvexBody {
    let d = lengths.len();
    let pts: Vec<Point> = (0..1usize << d)
        .map(|m| {
            (0..d)
                .map(|i| if m >> i & 1 == 1 { lengths[i] } else { 0.0 })
                .collect()
        })
        .collect();
    ConvexBody::hull(&pts, d).expect("box is a valid body")
}

/// `hull{0, e_1, ..., e_d}`.
pub fn simplex(d: usize) -> ConvexBody {
    let mut pts = vec![vec![0.0; d]];
    for i in 0..d {
        let mut e = vec![0.0; d];
        e[i] = 1.0;
        pts.push(e);
    }
    ConvexBody::hull(&pts, d).expect("simplex is a valid body")
}

/// `{x : |x_1| + ... + |x_d| <= 1}`.
pub fn cross_polytope(d: usize) -> ConvexBody {
    let mut pts = Vec::new();
    for i in 0..d {
        for s in [1.0, -1.0] {
            let mut e = vec![0.0; d];
            e[i] = s;
            pts.push(e);
        }
    }
    ConvexBody::hull(&pts, d).expect("cross-polytope is a valid body")
}
