//! Built-in example complexes.
//!
//! Small hand-checked triangulations used throughout the test-suite and
//! shipped as sample documents by the CLI: surfaces of every genus from a
//! polygon-fan, the projective plane, boundary spheres, and a one-vertex
//! 3-torus from the unit-cube decomposition into six tetrahedra.

use super::DeltaComplex;
use crate::error::Result;

/// The one-vertex torus: a square `a b a⁻¹ b⁻¹` split along a diagonal.
pub fn torus() -> DeltaComplex {
    genus_surface(1).named("torus")
}

/// Closed oriented surface of genus `g ≥ 1` as a fan over the `4g`-gon with
/// boundary word `a_1 b_1 a_1⁻¹ b_1⁻¹ ⋯ a_g b_g a_g⁻¹ b_g⁻¹`.
///
/// One vertex, `2g` generator loops plus `4g − 3` diagonals, `4g − 2`
/// triangles; Euler characteristic `2 − 2g`.
///
/// # Panics
/// Panics for `g = 0` (use [`tetrahedron_boundary`] for a 2-sphere).
pub fn genus_surface(g: usize) -> DeltaComplex {
    assert!(g >= 1, "genus_surface needs g >= 1");
    let m = 4 * g; // polygon sides
    let gens = 2 * g; // loop edges a_1, b_1, ..., a_g, b_g
    let edge_count = gens + (m - 3); // generators + diagonals δ_2..δ_{m-2}
    let edges = vec![[0usize, 0usize]; edge_count];

    // Side i of the polygon carries w[i]: generator id and sign.
    let letter = |i: usize| -> (usize, bool) {
        let block = i / 4;
        match i % 4 {
            0 => (2 * block, true),      // a_{block}
            1 => (2 * block + 1, true),  // b_{block}
            2 => (2 * block, false),     // a_{block} inverse
            _ => (2 * block + 1, false), // b_{block} inverse
        }
    };
    // Fan leg from the cone corner P_0 to P_i (1 ≤ i ≤ m−1): the first and
    // last polygon sides serve as the outer legs, diagonals fill the rest.
    let leg = |i: usize| -> usize {
        if i == 1 {
            letter(0).0
        } else if i == m - 1 {
            letter(m - 1).0
        } else {
            gens + (i - 2)
        }
    };

    let mut triangles = Vec::with_capacity(m - 2);
    for i in 1..=m - 2 {
        let (base, positive) = letter(i);
        // Corner order follows the edge directions: legs run P_0 → P_i and
        // P_0 → P_{i+1}; the base runs P_i → P_{i+1} iff w[i] is positive.
        let faces = if positive {
            vec![base, leg(i + 1), leg(i)]
        } else {
            vec![base, leg(i), leg(i + 1)]
        };
        triangles.push(faces);
    }

    DeltaComplex::new(2, 1, edges, vec![triangles])
        .expect("genus surface tables are coherent")
        .named(format!("genus{g}"))
}

/// The projective plane: two vertices, three edges, two triangles.
pub fn real_projective_plane() -> DeltaComplex {
    // Vertices v = 0, w = 1; edges a = [0,1], b = [0,1], c = [1,1].
    let edges = vec![[0, 1], [0, 1], [1, 1]];
    let triangles = vec![vec![2, 0, 1], vec![2, 1, 0]];
    DeltaComplex::new(2, 2, edges, vec![triangles])
        .expect("projective plane tables are coherent")
        .named("rp2")
}

/// Builds the full simplicial complex spanned by a facet list (see
/// [`DeltaComplex::from_facets`]).
fn from_facets(name: &str, facets: &[&[usize]]) -> DeltaComplex {
    let owned: Vec<Vec<usize>> = facets.iter().map(|f| f.to_vec()).collect();
    DeltaComplex::from_facets(&owned, None)
        .expect("builtin facet tables are coherent")
        .named(name)
}

/// Boundary of the 3-simplex: the minimal 2-sphere (4 triangles).
pub fn tetrahedron_boundary() -> DeltaComplex {
    from_facets("tetrahedron", &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])
}

/// The octahedron sphere (8 triangles), a simplicial 2-sphere with
/// antipodally split poles.
pub fn octahedron() -> DeltaComplex {
    from_facets(
        "octahedron",
        &[
            &[0, 2, 4],
            &[0, 2, 5],
            &[0, 3, 4],
            &[0, 3, 5],
            &[1, 2, 4],
            &[1, 2, 5],
            &[1, 3, 4],
            &[1, 3, 5],
        ],
    )
}

/// Boundary of the 4-simplex: the minimal 3-sphere (5 tetrahedra).
pub fn three_sphere() -> DeltaComplex {
    from_facets(
        "sphere3",
        &[
            &[0, 1, 2, 3],
            &[0, 1, 2, 4],
            &[0, 1, 3, 4],
            &[0, 2, 3, 4],
            &[1, 2, 3, 4],
        ],
    )
}

/// A triangle-boundary circle (3 vertices, 3 edges).
pub fn circle() -> DeltaComplex {
    from_facets("circle", &[&[0, 1], &[1, 2], &[0, 2]])
}

/// The one-vertex 3-torus from the six-tetrahedra cube decomposition.
///
/// Cells of the cube decomposition are chains of corners ordered by
/// coordinatewise inclusion; after the translation quotient a cell is
/// described by its list of successive increments (non-zero disjoint 0/1
/// vectors, encoded as bitmasks).  One vertex, 7 edges, 12 triangles, 6
/// tetrahedra; Euler characteristic 0.
pub fn three_torus() -> DeltaComplex {
    three_torus_impl().expect("3-torus tables are coherent")
}

fn three_torus_impl() -> Result<DeltaComplex> {
    // Edge classes: one per non-zero direction mask 1..=7; id = mask − 1.
    let edge_id = |mask: u8| -> usize { (mask - 1) as usize };
    let edges = vec![[0usize, 0usize]; 7];

    // Triangle classes: ordered pairs of disjoint non-zero masks.
    let mut tri_classes: Vec<(u8, u8)> = Vec::new();
    for a in 1u8..8 {
        for b in 1u8..8 {
            if a & b == 0 && a | b <= 7 {
                tri_classes.push((a, b));
            }
        }
    }
    tri_classes.sort_unstable();
    let tri_id = |a: u8, b: u8, classes: &[(u8, u8)]| -> usize {
        classes.binary_search(&(a, b)).expect("triangle class exists")
    };
    let triangles: Vec<Vec<usize>> = tri_classes
        .iter()
        .map(|&(a, b)| vec![edge_id(b), edge_id(a | b), edge_id(a)])
        .collect();

    // Tetrahedron classes: ordered triples of disjoint non-zero masks that
    // cover all three coordinates — the 3! orders of the atoms {1, 2, 4}.
    let mut tet_classes: Vec<(u8, u8, u8)> = Vec::new();
    for a in [1u8, 2, 4] {
        for b in [1u8, 2, 4] {
            for c in [1u8, 2, 4] {
                if a != b && b != c && a != c {
                    tet_classes.push((a, b, c));
                }
            }
        }
    }
    tet_classes.sort_unstable();
    let tetrahedra: Vec<Vec<usize>> = tet_classes
        .iter()
        .map(|&(a, b, c)| {
            vec![
                tri_id(b, c, &tri_classes),
                tri_id(a | b, c, &tri_classes),
                tri_id(a, b | c, &tri_classes),
                tri_id(a, b, &tri_classes),
            ]
        })
        .collect();

    Ok(DeltaComplex::new(3, 1, edges, vec![triangles, tetrahedra])?.named("t3"))
}
