//! Standard small complexes used by tests, benches and examples.

use super::simplicial::SimplicialComplex;

fn build(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
    let facets: Vec<Vec<usize>> = facets.iter().map(|f| f.to_vec()).collect();
    SimplicialComplex::from_facets(n, &facets).expect("fixture is well formed")
}

/// Two isolated points.
pub fn two_points() -> SimplicialComplex {
    build(2, &[])
}

/// Boundary of a triangle: the nerve of a three-set cover of the circle.
pub fn circle() -> SimplicialComplex {
    build(3, &[&[0, 1], &[1, 2], &[0, 2]])
}

/// A full 2-simplex.
pub fn triangle() -> SimplicialComplex {
    build(3, &[&[0, 1, 2]])
}

/// The 6-vertex projective plane, vertices relabelled to `0..6` from the
/// usual `1..=6` listing `125 126 134 136 145 234 235 246 356 456`.
pub fn projective_plane() -> SimplicialComplex {
    const FACETS: [[usize; 3]; 10] = [
        [1, 2, 5],
        [1, 2, 6],
        [1, 3, 4],
        [1, 3, 6],
        [1, 4, 5],
        [2, 3, 4],
        [2, 3, 5],
        [2, 4, 6],
        [3, 5, 6],
        [4, 5, 6],
    ];
    let facets: Vec<Vec<usize>> = FACETS.iter().map(|f| f.iter().map(|v| v - 1).collect()).collect();
    SimplicialComplex::from_facets(6, &facets).expect("fixture is well formed")
}

/// The 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
pub fn torus() -> SimplicialComplex {
    let mut facets = Vec::new();
    for i in 0..7 {
        facets.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        facets.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    SimplicialComplex::from_facets(7, &facets).expect("fixture is well formed")
}

/// Boundary of the octahedron, a 2-sphere. Antipodal pairs are
/// `(0,1)`, `(2,3)`, `(4,5)`.
pub fn octahedron() -> SimplicialComplex {
    let mut facets = Vec::new();
    for a in [0, 1] {
        for b in [2, 3] {
            for c in [4, 5] {
                facets.push(vec![a, b, c]);
            }
        }
    }
    SimplicialComplex::from_facets(6, &facets).expect("fixture is well formed")
}

/// Suspension of the projective plane: 8 vertices, 20 tetrahedra.
pub fn suspended_projective_plane() -> SimplicialComplex {
    projective_plane().suspension()
}
