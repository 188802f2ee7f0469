use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::gen::{multigraphs, random_fragment, random_multigraph};
use super::{describe_fragment, describe_graph, CaseReport, SuiteOptions};
use crate::algebra::{GaussianRational as Q, Scalar};
use crate::connection::{
    canonical_matching_sign, connection_matrix, dglrs_constraint_sum, enumerate_fragments,
    exact_rank, fragment_tensor, fragment_tensor_sum, gram_pairing, matching_sign,
    DirectedMatching,
};
use crate::error::Result;
use crate::evaluator::{distinct_states, partition_function, s_h, s_h_with_circles, Mode};
use crate::graph::{
    enumerate_eulerian_subsets, eulerian_state, glue, glue_traced, graph_eulerian_subsets, EdgeSet,
    Fragment, MultiGraph,
};
use crate::models::{
    charpoly_model, circuit_neg_model, circuit_odd_model, circuit_pos_model, matchings_model,
    random_sparse_model, EdgeColoringModel,
};
use crate::oracles::{
    charpoly_oracle, circuit_partition_oracle, determinant, matching_count_oracle,
    permutation_sign_oracle, sachs_oracle,
};

type Outcome = Result<(Vec<CaseReport>, Vec<String>)>;
type Model = EdgeColoringModel<Q>;

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

fn join(values: &[Q]) -> String {
    let parts: Vec<String> = values.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn case(id: String, input: String, expected: String, actual: String, pass: bool) -> CaseReport {
    CaseReport {
        id,
        input,
        expected,
        actual,
        pass,
    }
}

fn value(g: &MultiGraph, h: &Model, mode: Mode) -> Result<Q> {
    Ok(partition_function(g, h, mode)?.value)
}

fn rng(opts: &SuiteOptions) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(opts.seed)
}

pub(super) fn circles(opts: &SuiteOptions) -> Outcome {
    let mut rng = rng(opts);
    let mut cases = Vec::new();
    for (k, two_ell) in [(1, 0), (0, 2), (1, 2), (2, 2), (2, 4)] {
        let mixed: Model = random_sparse_model(k, two_ell, 2, 0.8, &mut rng);
        let sym: Model = random_sparse_model(k, 0, 2, 0.8, &mut rng);
        let ext: Model = random_sparse_model(0, two_ell, 2, 0.8, &mut rng);
        let (ki, li) = (k as i64, two_ell as i64);
        for n in 1..=2 {
            let g = MultiGraph::circles(n);
            let checks = [
                ("mixed", value(&g, &mixed, Mode::Mixed)?, q(ki - li).pow(n)),
                ("ordinary", value(&g, &sym, Mode::Ordinary)?, q(ki).pow(n)),
                ("skew", value(&g, &ext, Mode::Skew)?, q(-li).pow(n)),
            ];
            for (mode, actual, expected) in checks {
                cases.push(case(
                    format!("k{k}-l{two_ell}-{mode}-o{n}"),
                    format!("{n} circle(s), (k, 2l) = ({k}, {two_ell}), {mode}"),
                    expected.to_string(),
                    actual.to_string(),
                    actual == expected,
                ));
            }
        }
    }
    Ok((cases, vec![]))
}

pub(super) fn matchings(opts: &SuiteOptions) -> Outcome {
    let max_v = opts.max_vertices.unwrap_or(5);
    let count = opts.count.unwrap_or(20);
    let max_e = opts.max_edges.unwrap_or(6);
    let mut graphs: Vec<(String, MultiGraph)> =
        multigraphs(max_v, max_v * max_v.saturating_sub(1) / 2, false, false)
            .into_iter()
            .enumerate()
            .map(|(i, g)| (format!("simple-{i:05}"), g))
            .collect();
    let simple = graphs.len();
    let mut rng = rng(opts);
    for i in 0..count {
        graphs.push((
            format!("random-{i:05}"),
            random_multigraph(&mut rng, 4, max_e),
        ));
    }
    let cases = graphs
        .par_iter()
        .map(|(id, g)| {
            let h = matchings_model::<Q>(g.max_degree());
            let actual = value(g, &h, Mode::Ordinary)?;
            let expected = q(matching_count_oracle(g)? as i64);
            Ok(case(
                id.clone(),
                describe_graph(g),
                expected.to_string(),
                actual.to_string(),
                actual == expected,
            ))
        })
        .collect::<Result<_>>()?;
    Ok((
        cases,
        vec![format!(
            "{simple} simple graphs up to isomorphism, {count} random multigraphs"
        )],
    ))
}

pub(super) fn charpoly(opts: &SuiteOptions) -> Outcome {
    let max_v = opts.max_vertices.unwrap_or(4);
    let max_e = opts.max_edges.unwrap_or(6);
    let ts = [q(0), q(1), q(-2), Q::ratio(3, 2)];
    let graphs = multigraphs(max_v, max_e, true, true);
    let cases = graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let poly = charpoly_oracle(g)?;
            let mut engine = Vec::new();
            let mut oracle = Vec::new();
            let mut sachs = Vec::new();
            for t in &ts {
                engine.push(value(
                    g,
                    &charpoly_model(t.clone(), g.max_degree()),
                    Mode::Mixed,
                )?);
                oracle.push(poly.eval(t));
                sachs.push(sachs_oracle(g, t)?);
            }
            let pass = engine == oracle && sachs == oracle;
            Ok(case(
                format!("g-{i:05}"),
                format!("{} at t = {}", describe_graph(g), join(&ts)),
                format!("det {} sachs {}", join(&oracle), join(&sachs)),
                join(&engine),
                pass,
            ))
        })
        .collect::<Result<_>>()?;
    Ok((
        cases,
        vec![format!("{} multigraphs up to isomorphism", graphs.len())],
    ))
}

pub(super) fn dglrs(opts: &SuiteOptions) -> Outcome {
    let ks = opts.k.map_or(vec![1, 2], |k| vec![k]);
    let mut cases = Vec::new();
    let mut notes = Vec::new();
    for k in ks {
        // p(G; 0) = det(−A) = det(A): every G_π has an even number of vertices
        let det = dglrs_constraint_sum(|g| Ok(Q::real(determinant(&g.adjacency()).into())), k)?;
        let verdict = if det == q(0) {
            "constraint holds"
        } else {
            "constraint violated as claimed"
        };
        notes.push(format!("k = {k}: sum {det}, {verdict}"));
        cases.push(case(
            format!("k{k}-oracle"),
            format!("sum over S_{} of sgn · det(A(G_pi))", k + 1),
            "nonzero".into(),
            det.to_string(),
            det != q(0),
        ));
        let h0 = charpoly_model(q(0), 2);
        let engine = dglrs_constraint_sum(|g| value(g, &h0, Mode::Mixed), k)?;
        cases.push(case(
            format!("k{k}-engine"),
            format!(
                "sum over S_{} of sgn · p_h(G_pi) with the t = 0 model",
                k + 1
            ),
            det.to_string(),
            engine.to_string(),
            engine == det,
        ));
    }
    Ok((cases, notes))
}

pub(super) fn circuitpoly(opts: &SuiteOptions) -> Outcome {
    let max_v = opts.max_vertices.unwrap_or(4);
    let max_e = opts.max_edges.unwrap_or(6);
    let mut graphs: Vec<MultiGraph> = multigraphs(max_v, max_e, true, true)
        .into_iter()
        .filter(|g| g.is_eulerian())
        .collect();
    let plain = graphs.len();
    for i in 0..plain {
        let mut g = graphs[i].clone();
        g.add_circle();
        graphs.push(g);
    }
    graphs.push(MultiGraph::circles(2));
    let cases = graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let j = circuit_partition_oracle(g)?;
            let cap = g.max_degree();
            let mut expected = Vec::new();
            let mut actual = Vec::new();
            for k in 1..=3 {
                expected.push(j.eval(&q(k)));
                actual.push(value(
                    g,
                    &circuit_pos_model(k as usize, cap)?,
                    Mode::Ordinary,
                )?);
            }
            expected.push(j.eval(&q(-2)));
            actual.push(value(g, &circuit_neg_model(1)?, Mode::Skew)?);
            expected.push(j.eval(&q(-1)));
            actual.push(value(g, &circuit_odd_model(1, cap)?, Mode::Mixed)?);
            Ok(case(
                format!("g-{i:05}"),
                format!("{} at x = [1, 2, 3, -2, -1]", describe_graph(g)),
                format!("J = {j}: {}", join(&expected)),
                join(&actual),
                expected == actual,
            ))
        })
        .collect::<Result<_>>()?;
    Ok((
        cases,
        vec![format!(
            "{plain} Eulerian multigraphs up to isomorphism, each also with a circle"
        )],
    ))
}

/// A random graph with an Eulerian subset admitting `trials` distinct states.
fn invariance_instance(rng: &mut ChaCha8Rng, trials: usize) -> Result<(MultiGraph, EdgeSet, u64)> {
    loop {
        let n = rng.gen_range(2..=3);
        let m = rng.gen_range(5..=7);
        let edges: Vec<(usize, usize)> = (0..m)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect();
        let g = MultiGraph::from_edges(n, &edges)?;
        let subsets: Vec<EdgeSet> = graph_eulerian_subsets(&g)?
            .into_iter()
            .filter(|s| s.len() >= 4)
            .collect();
        if subsets.is_empty() {
            continue;
        }
        let subset = subsets[rng.gen_range(0..subsets.len())];
        let seed = rng.gen();
        let f = Fragment::from_graph(g.clone());
        if distinct_states(&f, subset, trials, seed)?.len() == trials {
            return Ok((g, subset, seed));
        }
    }
}

pub(super) fn invariance(opts: &SuiteOptions) -> Outcome {
    let count = opts.count.unwrap_or(50);
    let trials = opts.trials.unwrap_or(10);
    let mut rng = rng(opts);
    let mut instances = Vec::new();
    for i in 0..count {
        let (g, subset, seed) = invariance_instance(&mut rng, trials)?;
        let k = i % 3;
        let h: Model = random_sparse_model(k, 6, g.max_degree(), 0.9, &mut rng);
        instances.push((g, subset, seed, h));
    }
    let results: Vec<(CaseReport, bool)> = instances
        .par_iter()
        .enumerate()
        .map(|(i, (g, subset, seed, h))| {
            let f = Fragment::from_graph(g.clone());
            let states = distinct_states(&f, *subset, trials, *seed)?;
            let values = states
                .iter()
                .map(|st| s_h(g, *subset, h, st))
                .collect::<Result<Vec<Q>>>()?;
            let pass = states.len() == trials && values.iter().all(|v| *v == values[0]);
            let report = case(
                format!("case-{i:03}"),
                format!(
                    "{} F={:?} (k, 2l) = ({}, 6)",
                    describe_graph(g),
                    subset.iter().collect::<Vec<_>>(),
                    h.k()
                ),
                format!("{trials} equal values"),
                join(&values),
                pass,
            );
            Ok((report, values[0] != q(0)))
        })
        .collect::<Result<_>>()?;
    let nonzero = results.iter().filter(|r| r.1).count();
    let cases = results.into_iter().map(|r| r.0).collect();
    Ok((
        cases,
        vec![format!("{nonzero} of {count} cases have a nonzero value")],
    ))
}

pub(super) fn signs(opts: &SuiteOptions) -> Outcome {
    let max_m = opts.max_m.unwrap_or(3);
    let mut cases = Vec::new();
    for m in 1..=max_m {
        let ground: Vec<usize> = (0..2 * m).collect();
        let all = DirectedMatching::all_on(&ground);
        let pairs: Vec<(usize, usize)> = (0..all.len())
            .flat_map(|a| (0..all.len()).map(move |b| (a, b)))
            .collect();
        let mismatches: usize = pairs
            .par_iter()
            .map(|&(a, b)| -> Result<usize> {
                let fast = matching_sign(&all[a], &all[b])?;
                let slow = permutation_sign_oracle(&all[a], &all[b])?;
                Ok(usize::from(fast != slow))
            })
            .sum::<Result<usize>>()?;
        let canonical = DirectedMatching::canonical(&ground)?;
        let canonical_mismatches = all
            .iter()
            .filter(|x| Ok(canonical_matching_sign(x)) != permutation_sign_oracle(&canonical, x))
            .count();
        cases.push(case(
            format!("m{m}"),
            format!(
                "all {} directed perfect matchings on {} points, all {} pairs",
                all.len(),
                2 * m,
                pairs.len()
            ),
            "0 mismatches".into(),
            format!(
                "{} mismatches, {} canonical mismatches",
                mismatches, canonical_mismatches
            ),
            mismatches == 0 && canonical_mismatches == 0,
        ));
    }
    Ok((cases, vec![]))
}

pub(super) fn gram(opts: &SuiteOptions) -> Outcome {
    let count = opts.count.unwrap_or(30);
    let max_e = opts.max_edges.unwrap_or(4);
    let mut rng = rng(opts);
    let mut instances = Vec::new();
    for i in 0..count {
        let t = rng.gen_range(0..=3);
        let a = random_fragment(&mut rng, t, 3, max_e);
        let b = random_fragment(&mut rng, t, 3, max_e);
        let (k, two_ell) = [(1, 2), (2, 2)][i % 2];
        let cap = a.max_internal_degree().max(b.max_internal_degree());
        let h: Model = random_sparse_model(k, two_ell, cap, 0.7, &mut rng);
        instances.push((a, b, h, rng.gen::<u64>()));
    }
    let results: Vec<(CaseReport, usize)> = instances
        .par_iter()
        .enumerate()
        .map(|(i, (a, b, h, seed))| {
            let traced = glue_traced(a, b)?;
            let mut pair_rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut pairwise = 0;
            let mut bad = 0;
            for ha in enumerate_eulerian_subsets(a)? {
                let ta = fragment_tensor(a, ha, h, &eulerian_state(a, ha, pair_rng.gen())?)?;
                for hb in enumerate_eulerian_subsets(b)? {
                    let tb = fragment_tensor(b, hb, h, &eulerian_state(b, hb, pair_rng.gen())?)?;
                    let expected = match traced.glue_subsets(ha, hb) {
                        Some((subset, circles)) => {
                            s_h_with_circles(&traced.graph, subset, circles, h)?
                        }
                        None => q(0),
                    };
                    pairwise += 1;
                    if gram_pairing(&ta, &tb)? != expected {
                        bad += 1;
                    }
                }
            }
            let sum = gram_pairing(&fragment_tensor_sum(a, h)?, &fragment_tensor_sum(b, h)?)?;
            let p = value(&glue(a, b)?, h, Mode::Mixed)?;
            let report = case(
                format!("pair-{i:03}"),
                format!(
                    "F1: {}; F2: {}; (k, 2l) = ({}, {})",
                    describe_fragment(a),
                    describe_fragment(b),
                    h.k(),
                    h.two_ell()
                ),
                format!("p_h(F1*F2) = {p}, {pairwise} pairwise identities"),
                format!("[sum, sum] = {sum}, {bad} pairwise failures"),
                bad == 0 && sum == p,
            );
            Ok((report, pairwise))
        })
        .collect::<Result<_>>()?;
    let pairwise: usize = results.iter().map(|r| r.1).sum();
    let cases = results.into_iter().map(|r| r.0).collect();
    Ok((
        cases,
        vec![format!("{pairwise} pairwise tensor identities checked")],
    ))
}

pub(super) fn rank(opts: &SuiteOptions) -> Outcome {
    let max_v = opts.max_vertices.unwrap_or(2);
    let max_e = opts.max_edges.unwrap_or(4);
    let mut cases = Vec::new();
    let mut notes = Vec::new();
    for t in 1..=2usize {
        let family = enumerate_fragments(t, max_v, max_e)?;
        notes.push(format!("t = {t}: {} fragments", family.len()));
        let cap = family
            .iter()
            .map(Fragment::max_internal_degree)
            .max()
            .unwrap_or(0);
        let models: [(&str, Model, Mode); 3] = [
            ("charpoly-0", charpoly_model(q(0), cap), Mode::Mixed),
            ("circuit-odd-1", circuit_odd_model(1, cap)?, Mode::Mixed),
            ("matchings", matchings_model(cap), Mode::Ordinary),
        ];
        for (name, h, mode) in models {
            let dim = match mode {
                Mode::Ordinary => h.k(),
                _ => h.k() + h.two_ell(),
            };
            let bound = dim.pow(t as u32);
            let m = connection_matrix(family.clone(), &h, mode)?;
            let r = exact_rank(&m.entries);
            cases.push(case(
                format!("t{t}-{name}"),
                format!("{} fragments, {mode} mode", family.len()),
                format!("rank <= {bound}, symmetric"),
                format!("rank {r}, symmetric {}", m.is_symmetric()),
                r <= bound && m.is_symmetric() && family.len() >= 20,
            ));
        }
    }
    Ok((cases, notes))
}

pub(super) fn specialization(opts: &SuiteOptions) -> Outcome {
    let count = opts.count.unwrap_or(20);
    let max_e = opts.max_edges.unwrap_or(6);
    let mut rng = rng(opts);
    let mut cases = Vec::new();
    for i in 0..count {
        let g = random_multigraph(&mut rng, 4, max_e);
        let cap = g.max_degree();
        let sym: Model = random_sparse_model(rng.gen_range(1..=2), 0, cap, 0.7, &mut rng);
        let ext: Model = random_sparse_model(0, 2 * rng.gen_range(1..=2), cap, 0.7, &mut rng);
        let (m, o) = (
            value(&g, &sym, Mode::Mixed)?,
            value(&g, &sym, Mode::Ordinary)?,
        );
        cases.push(case(
            format!("mixed-ordinary-{i:03}"),
            describe_graph(&g),
            o.to_string(),
            m.to_string(),
            m == o,
        ));
        let (m, s) = (value(&g, &ext, Mode::Mixed)?, value(&g, &ext, Mode::Skew)?);
        cases.push(case(
            format!("mixed-skew-{i:03}"),
            describe_graph(&g),
            s.to_string(),
            m.to_string(),
            m == s,
        ));
    }
    for i in 0..count {
        let a = random_multigraph(&mut rng, 3, max_e / 2);
        let b = random_multigraph(&mut rng, 3, max_e - max_e / 2);
        let union = a.disjoint_union(&b);
        let cap = union.max_degree();
        let models: [(Model, Mode); 3] = [
            (
                random_sparse_model(2, 0, cap, 0.7, &mut rng),
                Mode::Ordinary,
            ),
            (random_sparse_model(0, 2, cap, 0.7, &mut rng), Mode::Skew),
            (random_sparse_model(1, 2, cap, 0.7, &mut rng), Mode::Mixed),
        ];
        for (h, mode) in models {
            let whole = value(&union, &h, mode)?;
            let product = value(&a, &h, mode)? * value(&b, &h, mode)?;
            cases.push(case(
                format!("product-{mode}-{i:03}"),
                format!("{} + {}", describe_graph(&a), describe_graph(&b)),
                product.to_string(),
                whole.to_string(),
                whole == product,
            ));
        }
    }
    Ok((cases, vec![]))
}
