//! Local moves on closed triangulated surfaces.
//!
//! A closed 2-dimensional Δ-complex is equivalently a set of triangles with
//! vertex labels plus a fixed-point-free involution pairing the `3F` edge
//! slots.  Moves are performed on that gluing description and the result is
//! rebuilt into a [`DeltaComplex`], whose constructor re-checks every
//! structural identity.  Because simplices glue along order-preserving
//! vertex maps, each move must also pick vertex orders for its new
//! triangles; a small search over orderings does exactly that.

use std::collections::BTreeMap;

use crate::complex::DeltaComplex;
use crate::error::{Error, Result};

/// Slot `3t + j`: face `j` of triangle `t`.
pub type Slot = usize;

/// A closed surface as triangles plus a slot pairing.
#[derive(Debug, Clone)]
pub struct Surface {
    /// Vertex classes of each triangle, in Δ-complex vertex order.
    pub tris: Vec<[usize; 3]>,
    /// Fixed-point-free involution on the `3F` slots.
    pub partner: Vec<Slot>,
}

/// The two corner positions on face slot `j` of a triangle, ascending.
fn slot_corners(j: usize) -> (usize, usize) {
    match j {
        0 => (1, 2),
        1 => (0, 2),
        2 => (0, 1),
        _ => unreachable!("triangle slots are 0..3"),
    }
}

impl Surface {
    /// Reads the gluing description off a closed 2-dimensional complex
    /// (every edge incident to exactly two triangle slots).
    pub fn from_complex(complex: &DeltaComplex) -> Result<Self> {
        if complex.dimension() != 2 {
            return Err(Error::UnsupportedDimension {
                dimension: complex.dimension(),
                context: "surface moves".into(),
            });
        }
        let f = complex.simplex_count(2);
        let mut by_edge: Vec<Vec<Slot>> = vec![Vec::new(); complex.simplex_count(1)];
        let mut tris = Vec::with_capacity(f);
        for t in 0..f {
            let tuple = complex.vertex_tuple(2, t);
            tris.push([tuple[0], tuple[1], tuple[2]]);
            for j in 0..3 {
                by_edge[complex.face(2, t, j)].push(3 * t + j);
            }
        }
        let mut partner = vec![usize::MAX; 3 * f];
        for (e, slots) in by_edge.iter().enumerate() {
            if slots.len() != 2 {
                return Err(Error::NotPseudomanifold(format!(
                    "edge {e} lies in {} triangle slots, expected 2",
                    slots.len()
                )));
            }
            partner[slots[0]] = slots[1];
            partner[slots[1]] = slots[0];
        }
        Ok(Surface { tris, partner })
    }

    pub fn triangle_count(&self) -> usize {
        self.tris.len()
    }

    /// Ordered vertex classes exposed by a slot (ascending corner position).
    fn slot_pair(&self, x: Slot) -> (usize, usize) {
        let (a, b) = slot_corners(x % 3);
        (self.tris[x / 3][a], self.tris[x / 3][b])
    }

    /// Rebuilds the Δ-complex: one edge per slot pair (ordered by smaller
    /// slot), vertex classes compacted, all identities re-verified by the
    /// constructor.
    pub fn to_complex(&self) -> Result<DeltaComplex> {
        let mut class_map = BTreeMap::new();
        for tri in &self.tris {
            for &v in tri {
                let next = class_map.len();
                class_map.entry(v).or_insert(next);
            }
        }
        let tris: Vec<[usize; 3]> = self
            .tris
            .iter()
            .map(|t| [class_map[&t[0]], class_map[&t[1]], class_map[&t[2]]])
            .collect();
        let relabeled = Surface {
            tris,
            partner: self.partner.clone(),
        };

        let mut edge_of_slot = vec![usize::MAX; relabeled.partner.len()];
        let mut edges = Vec::new();
        for x in 0..relabeled.partner.len() {
            let y = relabeled.partner[x];
            if y <= x {
                continue;
            }
            let pair = relabeled.slot_pair(x);
            if pair != relabeled.slot_pair(y) {
                return Err(Error::Malformed(format!(
                    "slots {x} and {y} expose different ordered vertex pairs"
                )));
            }
            edge_of_slot[x] = edges.len();
            edge_of_slot[y] = edges.len();
            edges.push([pair.0, pair.1]);
        }
        let faces: Vec<Vec<usize>> = (0..relabeled.tris.len())
            .map(|t| (0..3).map(|j| edge_of_slot[3 * t + j]).collect())
            .collect();
        DeltaComplex::new(2, class_map.len(), edges, vec![faces])
    }

    /// Deletes the given triangles, appends new ones, and returns the fresh
    /// surface (partners all unset) plus the slot translation for the kept
    /// triangles.
    fn rebuild(
        &self,
        removed: &[usize],
        new_tris: Vec<[usize; 3]>,
    ) -> (Surface, Vec<Option<Slot>>) {
        let keep: Vec<usize> = (0..self.tris.len())
            .filter(|t| !removed.contains(t))
            .collect();
        let mut tris: Vec<[usize; 3]> = keep.iter().map(|&t| self.tris[t]).collect();
        let mut translate = vec![None; self.partner.len()];
        for (new_t, &old_t) in keep.iter().enumerate() {
            for j in 0..3 {
                translate[3 * old_t + j] = Some(3 * new_t + j);
            }
        }
        tris.extend(new_tris);
        let partner = vec![usize::MAX; 3 * tris.len()];
        (Surface { tris, partner }, translate)
    }
}

/// Searches vertex orders for new triangles subject to "position of `a`
/// precedes position of `b`" constraints.  `locals[i]` holds constraints
/// inside triangle `i` as `(a, b, a_first)` over abstract labels `0..3`;
/// each `cross` entry `(i, a, b, k, c, d)` demands
/// `(pos_i(a) < pos_i(b)) == (pos_k(c) < pos_k(d))`.  Returns one order per
/// triangle, as `order[position] = label`.
fn order_search(
    locals: &[Vec<(usize, usize, bool)>],
    cross: &[(usize, usize, usize, usize, usize, usize)],
) -> Option<Vec<[usize; 3]>> {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    // For each triangle, the surviving position tables: pos[label] = position.
    let mut choices: Vec<Vec<[usize; 3]>> = Vec::with_capacity(locals.len());
    for constraints in locals {
        let mut ok = Vec::new();
        for perm in PERMS {
            let mut pos = [0usize; 3];
            for (position, &label) in perm.iter().enumerate() {
                pos[label] = position;
            }
            if constraints
                .iter()
                .all(|&(a, b, first)| (pos[a] < pos[b]) == first)
            {
                ok.push(pos);
            }
        }
        if ok.is_empty() {
            return None;
        }
        choices.push(ok);
    }
    let mut pick = vec![0usize; choices.len()];
    loop {
        let satisfied = cross.iter().all(|&(i, a, b, k, c, d)| {
            let pi = choices[i][pick[i]];
            let pk = choices[k][pick[k]];
            (pi[a] < pi[b]) == (pk[c] < pk[d])
        });
        if satisfied {
            let orders = pick
                .iter()
                .zip(&choices)
                .map(|(&p, c)| {
                    let pos = c[p];
                    let mut order = [0usize; 3];
                    for label in 0..3 {
                        order[pos[label]] = label;
                    }
                    order
                })
                .collect();
            return Some(orders);
        }
        let mut i = 0;
        loop {
            if i == pick.len() {
                return None;
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// Flips the edge at `slot`: the two triangles sharing it are re-cut along
/// the other diagonal of their quadrilateral.  Triangle count is unchanged.
pub fn flip(surface: &Surface, slot: Slot) -> Result<Surface> {
    let x = slot;
    let y = surface.partner[x];
    let (s, j) = (x / 3, x % 3);
    let (t, l) = (y / 3, y % 3);
    if s == t {
        return Err(Error::MoveInadmissible(
            "cannot flip an edge glued to itself within one triangle".into(),
        ));
    }
    let (p, q) = slot_corners(j);
    let (r, w) = slot_corners(l);
    // Quad corners: A = apex of s (corner j), B/C = the shared edge's
    // classes at corners p/q of s (and r/w of t), D = apex of t (corner l).
    // New triangles: N1 on {A, B, D} with labels A=0, B=1, D=2 and N2 on
    // {A, C, D} with labels A=0, C=1, D=2, glued along the diagonal AD.
    //
    // Each surviving quad side must expose the same ordered class pair as
    // before, which pins the relative label order:
    //   side AB (slot q of s) exposed A before B iff j < p;
    //   side BD (slot w of t) exposed B before D iff r < l;
    //   side AC (slot p of s) exposed A before C iff j < q;
    //   side CD (slot r of t) exposed C before D iff w < l;
    //   and the diagonal AD must agree between N1 and N2.
    let n1_local = vec![(0, 1, j < p), (1, 2, r < l)];
    let n2_local = vec![(0, 1, j < q), (1, 2, w < l)];
    let cross = vec![(0, 0, 2, 1, 0, 2)];
    let orders = order_search(&[n1_local, n2_local], &cross)
        .ok_or_else(|| Error::MoveInadmissible("no vertex order realizes this flip".into()))?;

    let class = |which: usize, label: usize| -> usize {
        match (which, label) {
            (_, 0) => surface.tris[s][j], // A
            (0, 1) => surface.tris[s][p], // B
            (1, 1) => surface.tris[s][q], // C
            _ => surface.tris[t][l],      // D
        }
    };
    let n1 = [
        class(0, orders[0][0]),
        class(0, orders[0][1]),
        class(0, orders[0][2]),
    ];
    let n2 = [
        class(1, orders[1][0]),
        class(1, orders[1][1]),
        class(1, orders[1][2]),
    ];

    let pos = |order: [usize; 3], label: usize| order.iter().position(|&m| m == label).unwrap();
    let (mut next, translate) = surface.rebuild(&[s.min(t), s.max(t)], vec![n1, n2]);
    let base1 = 3 * (next.tris.len() - 2);
    let base2 = 3 * (next.tris.len() - 1);
    // A side's slot index equals the position of the label it omits.
    let new_of_old: BTreeMap<Slot, Slot> = BTreeMap::from([
        (3 * s + q, base1 + pos(orders[0], 2)), // AB omits D
        (3 * t + w, base1 + pos(orders[0], 0)), // BD omits A
        (3 * s + p, base2 + pos(orders[1], 2)), // AC omits D
        (3 * t + r, base2 + pos(orders[1], 0)), // CD omits A
    ]);
    let diag1 = base1 + pos(orders[0], 1); // AD in N1 omits B
    let diag2 = base2 + pos(orders[1], 1); // AD in N2 omits C

    let mut glue = |a: Slot, b: Slot| {
        next.partner[a] = b;
        next.partner[b] = a;
    };
    glue(diag1, diag2);
    for (&old, &new) in &new_of_old {
        let out = surface.partner[old];
        match new_of_old.get(&out) {
            Some(&other_new) => glue(new, other_new),
            None => glue(new, translate[out].expect("outside slot survives")),
        }
    }
    for z in 0..surface.partner.len() {
        let (Some(a), o) = (translate[z], surface.partner[z]) else {
            continue;
        };
        if let Some(b) = translate[o] {
            next.partner[a] = b;
        }
    }
    debug_assert!(next.partner.iter().all(|&v| v != usize::MAX));
    Ok(next)
}

/// Splits a triangle into three around a fresh interior vertex
/// (the 1→3 move).  Always admissible.
pub fn split_triangle(surface: &Surface, t: usize) -> Result<Surface> {
    if t >= surface.tris.len() {
        return Err(Error::BadParameter(format!("no triangle {t}")));
    }
    let u = surface
        .tris
        .iter()
        .flat_map(|tri| tri.iter().copied())
        .max()
        .unwrap_or(0)
        + 1;
    let old = surface.tris[t];
    // New triangle N_j replaces old slot j: vertices (first corner of j,
    // second corner of j, u), so its outward side is slot 2 and exposes the
    // same ordered pair as the old slot did.
    let mut new_tris = Vec::with_capacity(3);
    for j in 0..3 {
        let (a, b) = slot_corners(j);
        new_tris.push([old[a], old[b], u]);
    }
    let (mut next, translate) = surface.rebuild(&[t], new_tris);
    let base = 3 * (next.tris.len() - 3);
    let outer = |j: usize| base + 3 * j + 2;

    let mut glue = |a: Slot, b: Slot| {
        next.partner[a] = b;
        next.partner[b] = a;
    };
    // Internal spokes: corner position c of the old triangle meets u inside
    // the two new triangles N_j with j != c; there the side through that
    // corner and u is slot 1 if the corner sits at position 0, else slot 0.
    // Both sides expose (corner class, u), so the gluing directions agree.
    for c in 0..3 {
        let mut sides = Vec::with_capacity(2);
        for j in 0..3 {
            if j == c {
                continue;
            }
            let (a, _) = slot_corners(j);
            sides.push(base + 3 * j + if a == c { 1 } else { 0 });
        }
        glue(sides[0], sides[1]);
    }
    for j in 0..3 {
        let out = surface.partner[3 * t + j];
        if out / 3 == t {
            glue(outer(j), outer(out % 3));
        } else {
            glue(outer(j), translate[out].expect("outside slot survives"));
        }
    }
    for z in 0..surface.partner.len() {
        let (Some(a), o) = (translate[z], surface.partner[z]) else {
            continue;
        };
        if let Some(b) = translate[o] {
            next.partner[a] = b;
        }
    }
    debug_assert!(next.partner.iter().all(|&v| v != usize::MAX));
    Ok(next)
}

/// Merges the three triangles around a vertex of degree three into one
/// (the 3→1 move, inverse of [`split_triangle`]).
pub fn merge_vertex(surface: &Surface, vertex: usize) -> Result<Surface> {
    // The vertex class must appear at exactly three corners, on three
    // distinct triangles.
    let mut corners: Vec<(usize, usize)> = Vec::new();
    for (t, tri) in surface.tris.iter().enumerate() {
        for (pos, &v) in tri.iter().enumerate() {
            if v == vertex {
                corners.push((t, pos));
            }
        }
    }
    if corners.len() != 3 {
        return Err(Error::MoveInadmissible(format!(
            "vertex class {vertex} has degree {}, need exactly 3",
            corners.len()
        )));
    }
    let tri_ids: Vec<usize> = corners.iter().map(|&(t, _)| t).collect();
    if tri_ids[0] == tri_ids[1] || tri_ids[1] == tri_ids[2] || tri_ids[0] == tri_ids[2] {
        return Err(Error::MoveInadmissible(
            "vertex corners are not on three distinct triangles".into(),
        ));
    }
    let apex_of: BTreeMap<usize, usize> = corners.iter().copied().collect();

    // The six slots through the vertex must pair among themselves, across
    // distinct triangles.
    let touching: Vec<Slot> = corners
        .iter()
        .flat_map(|&(t, pos)| (0..3).filter(move |&j| j != pos).map(move |j| 3 * t + j))
        .collect();
    for &x in &touching {
        if !touching.contains(&surface.partner[x]) || surface.partner[x] / 3 == x / 3 {
            return Err(Error::MoveInadmissible(
                "the link of the vertex is not a triangle".into(),
            ));
        }
    }

    // Group the six non-apex corners into link vertices via the corner
    // identifications induced by the glued slots.  Each glued slot pair
    // matches its apex corners together and its non-apex corners together.
    let mut group: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut union_edges: Vec<(usize, usize)> = Vec::new();
    for &x in &touching {
        let y = surface.partner[x];
        if y < x {
            continue;
        }
        let (xa, xb) = slot_corners(x % 3);
        let (ya, yb) = slot_corners(y % 3);
        for (cx, cy) in [(xa, ya), (xb, yb)] {
            let kx = (x / 3, cx);
            let ky = (y / 3, cy);
            let x_is_apex = apex_of[&kx.0] == kx.1;
            let y_is_apex = apex_of[&ky.0] == ky.1;
            if x_is_apex != y_is_apex {
                return Err(Error::MoveInadmissible(
                    "gluing matches the vertex with another class".into(),
                ));
            }
            if !x_is_apex {
                let next_id = group.len();
                let gx = *group.entry(kx).or_insert(next_id);
                let next_id = group.len();
                let gy = *group.entry(ky).or_insert(next_id);
                union_edges.push((gx, gy));
            }
        }
    }
    if group.len() != 6 {
        return Err(Error::MoveInadmissible(
            "the star of the vertex is not embedded".into(),
        ));
    }
    let mut parent: Vec<usize> = (0..group.len()).collect();
    fn find_root(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (a, b) in union_edges {
        let (ra, rb) = (find_root(&mut parent, a), find_root(&mut parent, b));
        parent[ra.max(rb)] = ra.min(rb);
    }
    let mut roots: Vec<usize> = (0..group.len()).map(|i| find_root(&mut parent, i)).collect();
    roots.sort_unstable();
    roots.dedup();
    if roots.len() != 3 {
        return Err(Error::MoveInadmissible(format!(
            "link has {} vertices, need exactly 3",
            roots.len()
        )));
    }

    // One direction constraint per removed triangle: its outward side
    // exposed its two link vertices in ascending corner order, so the new
    // triangle's matching side must expose the same classes in that order.
    let label = |parent: &mut Vec<usize>, key: (usize, usize)| -> usize {
        let r = find_root(parent, group[&key]);
        roots.iter().position(|&o| o == r).unwrap()
    };
    let mut locals = vec![Vec::with_capacity(3)];
    let mut side_labels: Vec<(usize, usize)> = Vec::with_capacity(3);
    let mut class_of_label = [usize::MAX; 3];
    for &(t, apex) in &corners {
        let (a, b) = slot_corners(apex);
        let ga = label(&mut parent, (t, a));
        let gb = label(&mut parent, (t, b));
        if ga == gb {
            return Err(Error::MoveInadmissible(
                "link traverses a vertex twice; not a simple triangle".into(),
            ));
        }
        class_of_label[ga] = surface.tris[t][a];
        class_of_label[gb] = surface.tris[t][b];
        locals[0].push((ga, gb, true));
        side_labels.push((ga, gb));
    }
    let orders = order_search(&locals, &[])
        .ok_or_else(|| Error::MoveInadmissible("no vertex order realizes this merge".into()))?;
    let order = orders[0];
    let nt = [
        class_of_label[order[0]],
        class_of_label[order[1]],
        class_of_label[order[2]],
    ];
    let pos = |lab: usize| order.iter().position(|&m| m == lab).unwrap();

    let mut removed = tri_ids.clone();
    removed.sort_unstable();
    let (mut next, translate) = surface.rebuild(&removed, vec![nt]);
    let base = 3 * (next.tris.len() - 1);
    let mut new_of_old: BTreeMap<Slot, Slot> = BTreeMap::new();
    for (i, &(t, apex)) in corners.iter().enumerate() {
        let (ga, gb) = side_labels[i];
        let missing = 3 - ga - gb;
        new_of_old.insert(3 * t + apex, base + pos(missing));
    }
    let mut glue = |a: Slot, b: Slot| {
        next.partner[a] = b;
        next.partner[b] = a;
    };
    for (&old, &new) in &new_of_old {
        let out = surface.partner[old];
        match new_of_old.get(&out) {
            Some(&other) => glue(new, other),
            None => {
                let Some(kept) = translate[out] else {
                    return Err(Error::MoveInadmissible(
                        "outer side is glued into the removed star".into(),
                    ));
                };
                glue(new, kept);
            }
        }
    }
    for z in 0..surface.partner.len() {
        let (Some(a), o) = (translate[z], surface.partner[z]) else {
            continue;
        };
        if let Some(b) = translate[o] {
            next.partner[a] = b;
        }
    }
    if next.partner.iter().any(|&v| v == usize::MAX) {
        return Err(Error::MoveInadmissible("merge left unmatched slots".into()));
    }
    Ok(next)
}

/// Contracts the edge at `slot`, merging its endpoint classes and deleting
/// the two incident triangles.  Inadmissible for loops, for edges with both
/// sides on one triangle, and when either side sits at the middle slot of
/// its triangle (the two surviving sides would be identified with opposite
/// directions there).
pub fn contract(surface: &Surface, slot: Slot) -> Result<Surface> {
    let x = slot;
    let y = surface.partner[x];
    let (s, j) = (x / 3, x % 3);
    let (t, l) = (y / 3, y % 3);
    if s == t {
        return Err(Error::MoveInadmissible(
            "cannot contract an edge with both sides on one triangle".into(),
        ));
    }
    if j == 1 || l == 1 {
        return Err(Error::MoveInadmissible(
            "edge sits at the middle slot; directions would clash".into(),
        ));
    }
    let (p, q) = slot_corners(j);
    let (b, c) = (surface.tris[s][p], surface.tris[s][q]);
    if b == c {
        return Err(Error::MoveInadmissible("cannot contract a loop".into()));
    }
    if surface.tris.len() <= 2 {
        return Err(Error::MoveInadmissible(
            "contraction would empty the surface".into(),
        ));
    }

    // Inside each removed triangle the two surviving sides are the slots
    // other than the contracted one, and they become identified.
    let s_sides = [3 * s + p, 3 * s + q];
    let t_sides = {
        let (rr, ww) = slot_corners(l);
        [3 * t + rr, 3 * t + ww]
    };
    if surface.partner[s_sides[0]] == s_sides[1] || surface.partner[t_sides[0]] == t_sides[1] {
        return Err(Error::MoveInadmissible(
            "triangle sides are glued to each other; contraction would pinch".into(),
        ));
    }

    let removed_tris = [s.min(t), s.max(t)];
    let in_removed = |z: Slot| z / 3 == s || z / 3 == t;
    let identified = |z: Slot| -> Option<Slot> {
        if z == s_sides[0] {
            Some(s_sides[1])
        } else if z == s_sides[1] {
            Some(s_sides[0])
        } else if z == t_sides[0] {
            Some(t_sides[1])
        } else if z == t_sides[1] {
            Some(t_sides[0])
        } else {
            None
        }
    };
    // Chase a gluing chain through the removed triangles until it exits.
    let chase = |start: Slot| -> Result<Slot> {
        let mut z = surface.partner[start];
        let mut steps = 0;
        while in_removed(z) {
            z = identified(z).ok_or_else(|| {
                Error::MoveInadmissible("chain ran into the contracted edge".into())
            })?;
            z = surface.partner[z];
            steps += 1;
            if steps > surface.partner.len() {
                return Err(Error::MoveInadmissible("gluing chain never leaves".into()));
            }
        }
        Ok(z)
    };

    let (mut next, translate) = surface.rebuild(&removed_tris, Vec::new());
    let keep_class = b.min(c);
    let drop_class = b.max(c);
    for tri in &mut next.tris {
        for v in tri.iter_mut() {
            if *v == drop_class {
                *v = keep_class;
            }
        }
    }
    for old in 0..surface.partner.len() {
        let Some(new) = translate[old] else { continue };
        let out = surface.partner[old];
        let target = if in_removed(out) { chase(old)? } else { out };
        let new_target = translate[target].ok_or_else(|| {
            Error::MoveInadmissible("gluing chain terminates inside the removed star".into())
        })?;
        next.partner[new] = new_target;
    }
    for z in 0..next.partner.len() {
        if next.partner[z] == usize::MAX || next.partner[next.partner[z]] != z {
            return Err(Error::MoveInadmissible(
                "contraction produced an inconsistent gluing".into(),
            ));
        }
    }
    Ok(next)
}
