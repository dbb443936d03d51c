//! Word metric and explicit graph against independent constructions.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use carpet_core::metric::{vertex_distance, vertex_trace};
use carpet_core::word::all_words;
use carpet_core::{
    bfs_from, carpet_side, distance_with, l1, AdjacencyGraph, CaseKind, LatticePoint, Rule, VertexTable, Word,
};

/// Hole-carving construction: start from the full grid on `[0, 3^(n-1)]^2`
/// and drop every point or unit edge whose midpoint lies strictly inside a
/// removed middle square at some scale.
fn carved_graph(level: usize) -> BTreeMap<(i64, i64), BTreeSet<(i64, i64)>> {
    let side = carpet_side(level);
    // work in doubled coordinates so edge midpoints are integral
    let inside_hole = |mx: i64, my: i64| {
        let mut s = 2 * side;
        while s >= 6 {
            let t = s / 3;
            let (bx, by) = (mx.rem_euclid(s), my.rem_euclid(s));
            if t < bx && bx < 2 * t && t < by && by < 2 * t {
                return true;
            }
            s = t;
        }
        false
    };
    let mut adj: BTreeMap<(i64, i64), BTreeSet<(i64, i64)>> = BTreeMap::new();
    for x in 0..=side {
        for y in 0..=side {
            if !inside_hole(2 * x, 2 * y) {
                adj.entry((x, y)).or_default();
            }
        }
    }
    let vertices: Vec<_> = adj.keys().copied().collect();
    for (x, y) in vertices {
        for (nx, ny) in [(x + 1, y), (x, y + 1)] {
            if adj.contains_key(&(nx, ny)) && !inside_hole(x + nx, y + ny) {
                adj.get_mut(&(x, y)).unwrap().insert((nx, ny));
                adj.get_mut(&(nx, ny)).unwrap().insert((x, y));
            }
        }
    }
    adj
}

fn carved_bfs(adj: &BTreeMap<(i64, i64), BTreeSet<(i64, i64)>>, s: (i64, i64)) -> BTreeMap<(i64, i64), u64> {
    let mut dist = BTreeMap::from([(s, 0u64)]);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        let d = dist[&u];
        for &v in &adj[&u] {
            dist.entry(v).or_insert_with(|| {
                queue.push_back(v);
                d + 1
            });
        }
    }
    dist
}

#[test]
fn glued_graph_equals_carved_grid() {
    for level in 1..=4 {
        let g = AdjacencyGraph::build(level).unwrap();
        let carved = carved_graph(level);
        let points: Vec<_> = g.points().iter().map(|p| (p.x, p.y)).collect();
        assert_eq!(points, carved.keys().copied().collect::<Vec<_>>(), "level {level}");
        for u in 0..g.vertex_count() {
            let mine: BTreeSet<_> = g.neighbors(u).iter().map(|&v| (g.point(v as usize).x, g.point(v as usize).y)).collect();
            assert_eq!(&mine, &carved[&points[u]]);
        }
    }
}

#[test]
fn wiener_of_carved_grid() {
    // n = 4 is where the published table and the graph part ways
    let expected = [8u64, 320, 31264, 4646288];
    for level in 1..=4 {
        let adj = carved_graph(level);
        let total: u64 = adj.keys().map(|&s| carved_bfs(&adj, s).values().sum::<u64>()).sum();
        assert_eq!(total / 2, expected[level - 1]);
    }
}

#[test]
fn vertex_table_and_graph_agree() {
    for level in 1..=4 {
        let t = VertexTable::build(level).unwrap();
        let g = AdjacencyGraph::build(level).unwrap();
        assert_eq!(t.count(), g.vertex_count());
        for (i, v) in t.vertices().iter().enumerate() {
            assert_eq!(g.point(i), v.point);
        }
    }
}

#[test]
fn edge_count_is_distinct_square_sides() {
    for level in 1..=4 {
        let g = AdjacencyGraph::build(level).unwrap();
        let mut sides = BTreeSet::new();
        for w in all_words(level).filter(|w| w.corner() == carpet_core::YLetter::A) {
            let p = w.point();
            let c = [p, p.offset(1, 0), p.offset(1, 1), p.offset(0, 1)];
            for i in 0..4 {
                let (a, b) = (c[i], c[(i + 1) % 4]);
                sides.insert((a.min(b), a.max(b)));
            }
        }
        assert_eq!(g.edge_count(), sides.len());
    }
}

#[test]
fn complete_rule_equals_bfs_exhaustively() {
    for level in 1..=4 {
        let t = VertexTable::build(level).unwrap();
        let g = AdjacencyGraph::build(level).unwrap();
        let vs = t.vertices();
        for i in 0..vs.len() {
            let d = bfs_from(&g, i);
            for j in 0..vs.len() {
                assert_eq!(
                    vertex_distance(Rule::Complete, &vs[i], &vs[j]),
                    u64::from(d[j]),
                    "{} {}",
                    vs[i].word,
                    vs[j].word
                );
            }
        }
    }
}

#[test]
fn case_rule_equals_bfs_up_to_level_three() {
    for level in 1..=3 {
        let t = VertexTable::build(level).unwrap();
        let g = AdjacencyGraph::build(level).unwrap();
        let vs = t.vertices();
        for i in 0..vs.len() {
            let d = bfs_from(&g, i);
            for j in i + 1..vs.len() {
                assert_eq!(vertex_distance(Rule::Cases, &vs[i], &vs[j]), u64::from(d[j]));
            }
        }
    }
}

#[test]
fn case_rule_misses_holes_at_level_four() {
    let t = VertexTable::build(4).unwrap();
    let g = AdjacencyGraph::build(4).unwrap();
    let vs = t.vertices();
    let mut by_case: BTreeMap<&str, u64> = BTreeMap::new();
    for i in 0..vs.len() {
        let d = bfs_from(&g, i);
        for j in i + 1..vs.len() {
            let tr = vertex_trace(Rule::Cases, &vs[i], &vs[j]);
            let o = u64::from(d[j]);
            assert!(tr.value <= o, "the rule never overestimates");
            if tr.value != o {
                assert_eq!(o - tr.value, 2);
                *by_case.entry(tr.case.kind.name()).or_default() += 1;
            }
        }
    }
    assert_eq!(by_case, BTreeMap::from([("CaseIII", 384), ("CaseIV", 336)]));
}

#[test]
fn case_one_pairs_are_manhattan() {
    for level in 2..=4 {
        let t = VertexTable::build(level).unwrap();
        let g = AdjacencyGraph::build(level).unwrap();
        let vs = t.vertices();
        for i in 0..vs.len() {
            let d = bfs_from(&g, i);
            for j in 0..vs.len() {
                let tr = vertex_trace(Rule::Cases, &vs[i], &vs[j]);
                if matches!(tr.case.kind, CaseKind::CaseI | CaseKind::SameSquare) {
                    assert_eq!(u64::from(d[j]), l1(vs[i].point, vs[j].point));
                }
            }
        }
    }
}

fn representative_mismatches(rule: Rule, level: usize, stride: usize) -> usize {
    let t = VertexTable::build(level).unwrap();
    let words: Vec<Word> = all_words(level).collect();
    let mut bad = 0;
    for a in words.iter().step_by(stride) {
        let ca = t.canonicalize(a).unwrap();
        for b in &words {
            let cb = t.canonicalize(b).unwrap();
            if distance_with(rule, a, b).unwrap().value != distance_with(rule, ca, cb).unwrap().value {
                bad += 1;
            }
        }
    }
    bad
}

#[test]
fn distances_do_not_depend_on_representatives() {
    for level in 1..=3 {
        assert_eq!(representative_mismatches(Rule::Cases, level, 1), 0);
        assert_eq!(representative_mismatches(Rule::Complete, level, 1), 0);
    }
    assert_eq!(representative_mismatches(Rule::Complete, 4, 13), 0);
}

#[test]
fn case_rule_depends_on_representative_at_level_four() {
    let w = |s: &str| Word::parse(s, 4).unwrap();
    assert_eq!(w("c552").point(), w("a213").point());
    let via_other = distance_with(Rule::Cases, &w("a214"), &w("c552")).unwrap().value;
    let via_canonical = distance_with(Rule::Cases, &w("a214"), &w("a213")).unwrap().value;
    assert_ne!(via_other, via_canonical);
    let complete = |a, b| distance_with(Rule::Complete, &w(a), &w(b)).unwrap().value;
    assert_eq!(complete("a214", "c552"), complete("a214", "a213"));
}

#[test]
fn graph_is_invariant_under_the_square_symmetries() {
    for level in 1..=4 {
        let g = AdjacencyGraph::build(level).unwrap();
        let side = carpet_side(level);
        let maps: [fn(LatticePoint, i64) -> LatticePoint; 2] = [|p, s| p.reflect(s), |p, s| p.rotate(s)];
        for map in maps {
            let image: Vec<usize> = g.points().iter().map(|&p| g.id_of(map(p, side)).expect("vertex maps to vertex")).collect();
            let distinct: BTreeSet<_> = image.iter().collect();
            assert_eq!(distinct.len(), g.vertex_count());
            for (u, v) in g.edges() {
                assert!(g.has_edge(image[u], image[v]));
            }
            if level <= 3 {
                for s in 0..g.vertex_count() {
                    let d = bfs_from(&g, s);
                    let d_image = bfs_from(&g, image[s]);
                    for t in 0..g.vertex_count() {
                        assert_eq!(d[t], d_image[image[t]]);
                    }
                }
            }
        }
    }
}
