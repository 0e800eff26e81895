//! Small named complexes.

use alloc::vec::Vec;

use crate::complex::{Complex, Vertex};

/// The full simplex `Δ^s` on vertices `1..=s+1`.
pub fn full_simplex(s: usize) -> Complex {
    let vertices: Vec<Vertex> = (1..=s as Vertex + 1).collect();
    Complex::simplex(&vertices).expect("distinct vertices")
}

/// The boundary `∂Δ^m`: all `m`-subsets of `1..=m+1`.
pub fn simplex_boundary(m: usize) -> Complex {
    assert!(m >= 1, "∂Δ^0 is empty");
    let vertices: Vec<Vertex> = (1..=m as Vertex + 1).collect();
    let facets = (0..vertices.len()).map(|skip| {
        vertices.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect::<Vec<_>>()
    });
    Complex::from_facets(facets).expect("valid facets")
}

pub const RP2_SIX_FACETS: [[Vertex; 3]; 10] = [
    [1, 2, 3],
    [1, 3, 4],
    [1, 4, 5],
    [1, 5, 6],
    [1, 2, 6],
    [2, 3, 5],
    [2, 4, 5],
    [2, 4, 6],
    [3, 4, 6],
    [3, 5, 6],
];

/// The 6-vertex real projective plane, f = (6, 15, 10).
pub fn rp2_six() -> Complex {
    Complex::from_facets(RP2_SIX_FACETS).expect("valid facets")
}

/// The 7-vertex (Möbius) torus, f = (7, 21, 14).
pub fn torus_seven() -> Complex {
    let facets = (0..7u32).flat_map(|i| {
        let v = |k: u32| (i + k) % 7 + 1;
        [[v(0), v(1), v(3)], [v(0), v(2), v(3)]]
    });
    Complex::from_facets(facets).expect("valid facets")
}

/// `S_t`: complete graph on `1..=t+1` with every triangle inside `1..=t` filled.
pub fn s_t(t: u32) -> Complex {
    let mut facets: Vec<Vec<Vertex>> = Vec::new();
    for i in 1..=t + 1 {
        for j in i + 1..=t + 1 {
            facets.push([i, j].into());
        }
    }
    for i in 1..=t {
        for j in i + 1..=t {
            for k in j + 1..=t {
                facets.push([i, j, k].into());
            }
        }
    }
    Complex::from_facets(facets).expect("valid facets")
}

/// Non-separating 5-cycle of [`rp2_six`] along which [`z_complex`] glues its disc.
pub const Z_GLUING_CYCLE: [Vertex; 5] = [1, 2, 3, 4, 6];

/// `RP² ∪ D²`: the 6-vertex projective plane with a cone (apex 7) glued along a
/// non-contractible 5-cycle. Every cycle edge gets degree 3, so `L = −5` and `χ = 2`.
pub fn z_complex() -> Complex {
    let mut facets: Vec<Vec<Vertex>> = RP2_SIX_FACETS.iter().map(|f| f.to_vec()).collect();
    let c = Z_GLUING_CYCLE;
    for i in 0..c.len() {
        facets.push([c[i], c[(i + 1) % c.len()], 7].into());
    }
    Complex::from_facets(facets).expect("valid facets")
}

/// Facets of a disc on `1..=7` with boundary triangle `1 2 3` and internal vertices 4, 5, 6, 7
/// (stellar subdivisions of the triangle and then of each of its three pieces).
pub const SUBDISC_FACETS: [[Vertex; 3]; 9] = [
    [1, 2, 5],
    [1, 4, 5],
    [2, 4, 5],
    [1, 3, 6],
    [1, 4, 6],
    [3, 4, 6],
    [2, 3, 7],
    [2, 4, 7],
    [3, 4, 7],
];

/// Vertex set of the proper subdisc that holds every internal vertex of [`unbalanced_disc`].
pub const UNBALANCED_DISC_WITNESS: [Vertex; 7] = [1, 2, 3, 4, 5, 6, 7];

/// A triangulated disc with `v = 8` vertices and `v_i = 4` internal ones, all of which lie in a
/// proper subdisc: the subdisc on `1..=7` plus the ear `1 2 8` glued on a boundary edge.
pub fn unbalanced_disc() -> Complex {
    let mut facets: Vec<Vec<Vertex>> = SUBDISC_FACETS.iter().map(|f| f.to_vec()).collect();
    facets.push([1, 2, 8].into());
    Complex::from_facets(facets).expect("valid facets")
}

pub fn subdisc() -> Complex {
    Complex::from_facets(SUBDISC_FACETS).expect("valid facets")
}
