//! Built-in polytope corpus shared by the verification suites, the tests,
//! and the benchmarks.

use crate::polytope::{Facet, LabelledPolytope};
use crate::rational::rat;

/// [0, 1]: the projective-line polytope.
pub fn interval() -> LabelledPolytope {
    LabelledPolytope::new(
        1,
        vec![Facet::new(vec![1], rat(0)), Facet::new(vec![-1], rat(1))],
    )
    .expect("interval is valid")
}

/// [0, 1] with label 2 on the right endpoint (teardrop orbifold datum).
pub fn labelled_interval() -> LabelledPolytope {
    LabelledPolytope::new(
        1,
        vec![
            Facet::new(vec![1], rat(0)),
            Facet::with_label(vec![-1], rat(1), 2),
        ],
    )
    .expect("labelled interval is valid")
}

/// The standard n-simplex.
pub fn simplex(n: usize) -> LabelledPolytope {
    let mut facets: Vec<Facet> = (0..n)
        .map(|i| {
            let mut v = vec![0i64; n];
            v[i] = 1;
            Facet::new(v, rat(0))
        })
        .collect();
    facets.push(Facet::new(vec![-1; n], rat(1)));
    LabelledPolytope::new(n, facets).expect("simplex is valid")
}

/// The unit square (product of two projective lines).
pub fn square() -> LabelledPolytope {
    LabelledPolytope::new(
        2,
        vec![
            Facet::new(vec![1, 0], rat(0)),
            Facet::new(vec![-1, 0], rat(1)),
            Facet::new(vec![0, 1], rat(0)),
            Facet::new(vec![0, -1], rat(1)),
        ],
    )
    .expect("square is valid")
}

/// The unit cube.
pub fn cube() -> LabelledPolytope {
    let mut facets = Vec::new();
    for i in 0..3 {
        let mut plus = vec![0i64; 3];
        plus[i] = 1;
        facets.push(Facet::new(plus, rat(0)));
        let mut minus = vec![0i64; 3];
        minus[i] = -1;
        facets.push(Facet::new(minus, rat(1)));
    }
    LabelledPolytope::new(3, facets).expect("cube is valid")
}

/// Trapezoid {x >= 0, y >= 0, 1 - y >= 0, 2 - x - y >= 0}: a first
/// Hirzebruch-type polytope whose extremal affine function is nonconstant.
pub fn trapezoid() -> LabelledPolytope {
    LabelledPolytope::new(
        2,
        vec![
            Facet::new(vec![1, 0], rat(0)),
            Facet::new(vec![0, 1], rat(0)),
            Facet::new(vec![0, -1], rat(1)),
            Facet::new(vec![-1, -1], rat(2)),
        ],
    )
    .expect("trapezoid is valid")
}

/// The named corpus used by the invariant suites.
pub fn standard_corpus() -> Vec<(&'static str, LabelledPolytope)> {
    vec![
        ("interval", interval()),
        ("labelled-interval", labelled_interval()),
        ("simplex-2", simplex(2)),
        ("simplex-3", simplex(3)),
        ("square", square()),
        ("cube", cube()),
        ("trapezoid", trapezoid()),
    ]
}
