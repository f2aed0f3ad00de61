use chemtree::enumeration::enumerate_pendent_rooted;
use chemtree::indices::{degree_counts, oxygen_distance, vertex_weighted_wiener, wiener};
use chemtree::qspr::{predict, RegressionModel};
use chemtree::{parse_tree, ChemicalTree, PendentRootedTree, VertexWeightedTree};
use proptest::prelude::*;
use proptest::sample::subsequence;

/// Random chemical tree: vertex `i > 0` hangs from a random earlier vertex
/// that still has room under the degree bound.
fn chemical_tree(max_order: usize) -> impl Strategy<Value = ChemicalTree> {
    (2..=max_order).prop_flat_map(chemical_tree_of)
}

fn chemical_tree_of(n: usize) -> impl Strategy<Value = ChemicalTree> {
    prop::collection::vec(any::<prop::sample::Index>(), n - 1)
        .prop_map(move |picks| {
            let mut degree = vec![0usize; n];
            let mut edges = Vec::new();
            for (i, pick) in picks.iter().enumerate() {
                let child = i + 1;
                let open: Vec<usize> = (0..child).filter(|&p| degree[p] < 4).collect();
                let p = open[pick.index(open.len())];
                degree[p] += 1;
                degree[child] += 1;
                edges.push((p, child));
            }
            ChemicalTree::from_edges(n, &edges, 4).unwrap()
        })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// Writes `t` in the text grammar from `root`, with children in the order
/// given by `key`.
fn encode(t: &ChemicalTree, root: usize, label_root: char, key: &[usize]) -> String {
    fn go(t: &ChemicalTree, v: usize, parent: Option<usize>, key: &[usize], out: &mut String) {
        let mut kids: Vec<usize> = t.neighbors(v).iter().copied().filter(|&w| Some(w) != parent).collect();
        kids.sort_by_key(|&w| key[w]);
        if kids.is_empty() {
            return;
        }
        out.push('(');
        for (i, w) in kids.into_iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push('C');
            go(t, w, Some(v), key, out);
        }
        out.push(')');
    }
    let mut out = String::new();
    out.push(label_root);
    go(t, root, None, key, &mut out);
    out
}

/// All-pairs distances by Floyd–Warshall on the edge list.
fn floyd(t: &ChemicalTree) -> Vec<Vec<usize>> {
    let n = t.order();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for (u, v) in t.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Brute-force isomorphism test over all vertex bijections.
fn isomorphic(a: &ChemicalTree, b: &ChemicalTree) -> bool {
    use itertools::Itertools;
    if a.order() != b.order() {
        return false;
    }
    let target: std::collections::BTreeSet<(usize, usize)> = b.edges().into_iter().collect();
    (0..a.order()).permutations(a.order()).any(|p| {
        a.edges()
            .into_iter()
            .all(|(u, v)| target.contains(&(p[u].min(p[v]), p[u].max(p[v]))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn canonical_form_is_label_invariant(
        (t, perm) in chemical_tree(12).prop_flat_map(|t| { let n = t.order(); (Just(t), permutation(n)) })
    ) {
        let r = t.relabeled(&perm).unwrap();
        prop_assert_eq!(t.canonical_form(), r.canonical_form());
    }

    #[test]
    fn rooted_canonical_form_is_label_invariant(
        (t, perm, pick) in chemical_tree(12)
            .prop_filter("needs three vertices", |t| t.order() >= 3)
            .prop_flat_map(|t| { let n = t.order(); (Just(t), permutation(n), any::<prop::sample::Index>()) })
    ) {
        let leaves = t.pendent_vertices();
        let root = leaves[pick.index(leaves.len())];
        let a = PendentRootedTree::new(t.clone(), root).unwrap();
        let b = PendentRootedTree::new(t.relabeled(&perm).unwrap(), perm[root]).unwrap();
        prop_assert_eq!(a.canonical_form(), b.canonical_form());
    }

    #[test]
    fn serialize_then_parse_is_canonical(
        (t, key, pick) in chemical_tree(12)
            .prop_flat_map(|t| { let n = t.order(); (Just(t), permutation(n), any::<prop::sample::Index>()) })
    ) {
        let start = pick.index(t.order());
        let text = encode(&t, start, 'C', &key);
        let parsed = parse_tree(&text).unwrap();
        prop_assert_eq!(parsed.canonical_form(), t.canonical_form());
        let canon = t.canonical_form();
        let again = parse_tree(canon.as_str()).unwrap().canonical_form();
        prop_assert_eq!(again, canon);
    }

    #[test]
    fn rooted_serialize_then_parse_is_canonical(
        (t, key, pick) in chemical_tree(12)
            .prop_filter("needs three vertices", |t| t.order() >= 3)
            .prop_flat_map(|t| { let n = t.order(); (Just(t), permutation(n), any::<prop::sample::Index>()) })
    ) {
        let leaves = t.pendent_vertices();
        let root = leaves[pick.index(leaves.len())];
        let text = encode(&t, root, 'O', &key);
        let parsed = PendentRootedTree::parse(&text).unwrap();
        let direct = PendentRootedTree::new(t.clone(), root).unwrap();
        prop_assert_eq!(parsed.canonical_form(), direct.canonical_form());
        let canon = direct.canonical_form();
        prop_assert_eq!(PendentRootedTree::parse(canon.as_str()).unwrap().canonical_form(), canon);
    }

    #[test]
    fn distances_match_floyd_and_are_symmetric(t in chemical_tree(12)) {
        let d = floyd(&t);
        let n = t.order();
        for (u, expected) in d.iter().enumerate() {
            let row = t.distances_from(u).unwrap();
            prop_assert_eq!(&row, expected);
            for v in 0..n {
                prop_assert_eq!(d[u][v], d[v][u]);
                // Neighbours sit one step closer to or farther from u.
                for w in t.neighbors(v) {
                    prop_assert_eq!(d[u][v].abs_diff(d[u][*w]), 1);
                }
            }
        }
    }

    #[test]
    fn degree_identity(t in chemical_tree(14)) {
        let c = degree_counts(&t).unwrap();
        prop_assert_eq!(c.n1 + 2 * c.n2 + 3 * c.n3 + 4 * c.n4, 2 * (t.order() - 1));
        prop_assert_eq!(t.degrees().iter().sum::<usize>(), 2 * (t.order() - 1));
    }

    #[test]
    fn unit_weights_give_the_wiener_index(t in chemical_tree(12)) {
        let d = floyd(&t);
        let pairs: usize = (0..t.order()).flat_map(|u| (u + 1..t.order()).map(move |v| (u, v))).map(|(u, v)| d[u][v]).sum();
        prop_assert_eq!(wiener(&t), pairs as u64);
        prop_assert_eq!(vertex_weighted_wiener(&VertexWeightedTree::unit(t.clone())), pairs as f64);
    }

    #[test]
    fn oxygen_distance_is_root_row_sum(
        (t, pick) in chemical_tree(12)
            .prop_filter("needs three vertices", |t| t.order() >= 3)
            .prop_flat_map(|t| (Just(t), any::<prop::sample::Index>()))
    ) {
        let leaves = t.pendent_vertices();
        let root = leaves[pick.index(leaves.len())];
        let r = PendentRootedTree::new(t.clone(), root).unwrap();
        prop_assert_eq!(oxygen_distance(&r), floyd(&t)[root].iter().sum::<usize>() as u64);
    }

    #[test]
    fn prediction_is_root_label_invariant(
        (t, perm, pick) in chemical_tree(10)
            .prop_filter("needs three vertices", |t| t.order() >= 3)
            .prop_flat_map(|t| { let n = t.order(); (Just(t), permutation(n), any::<prop::sample::Index>()) })
    ) {
        let leaves = t.pendent_vertices();
        let root = leaves[pick.index(leaves.len())];
        let a = PendentRootedTree::new(t.clone(), root).unwrap();
        let b = PendentRootedTree::new(t.relabeled(&perm).unwrap(), perm[root]).unwrap();
        for m in [RegressionModel::basic(), RegressionModel::regression_i(), RegressionModel::regression_ii()] {
            prop_assert_eq!(predict(&m, &a).unwrap(), predict(&m, &b).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_equality_iff_isomorphic(
        (a, b) in (2..=7usize).prop_flat_map(|n| (chemical_tree_of(n), chemical_tree_of(n)))
    ) {
        prop_assert_eq!(a.canonical_form() == b.canonical_form(), isomorphic(&a, &b));
    }

    #[test]
    fn fit_recovers_models_on_rooted_sets(
        b in prop::collection::vec(-20.0f64..20.0, 8),
        active in subsequence(vec!["wio3", "n2", "n3", "s2", "m2"], 0..=5),
    ) {
        use chemtree::qspr::{fit, parse_terms, DataRecord, Term};
        let terms = parse_terms(&active.join(",")).unwrap();
        let mut m = RegressionModel::basic();
        m.active = terms.clone();
        m.b0 = b[0];
        m.b1 = if terms.contains(&Term::Wio3) { b[1] } else { 0.0 };
        m.b2 = if terms.contains(&Term::S2) { b[2] } else { 0.0 };
        m.b3 = if terms.contains(&Term::M2) { b[3] } else { 0.0 };
        m.c.c1 = 0.0;
        m.c.c2 = if terms.contains(&Term::N2) { b[4] } else { 0.0 };
        m.c.c3 = if terms.contains(&Term::N3) { b[5] } else { 0.0 };
        m.c.c4 = 0.0;
        m.validate().unwrap();
        let data: Vec<DataRecord> = (6..=8)
            .flat_map(|n| enumerate_pendent_rooted(n, 4).unwrap())
            .map(|t| DataRecord::new("x", t.canonical_form().as_str(), predict(&m, &t).unwrap()).unwrap())
            .collect();
        let fitted = fit(&data, &terms).unwrap();
        prop_assert!((fitted.b0 - m.b0).abs() < 1e-6);
        for t in Term::ALL {
            prop_assert!((fitted.coefficient(t) - m.coefficient(t)).abs() < 1e-6, "{}", t);
        }
    }
}
