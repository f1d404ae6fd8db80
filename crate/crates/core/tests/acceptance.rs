//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use beideal::certify::{
    canonical_witness, canonical_witness_for, certify_strong_freg, certify_symbolic_fsplit,
    cofactor_position, order_lower_bound, Certificate, CertifyOptions,
};
use beideal::families::{
    caterpillar, circ_compose, complete_multipartite, f_m, g_m, join_of_completes, star_compose,
    CaterpillarSpec,
};
use beideal::graph::{
    connected_graphs, find_labeling, hamiltonian_path, is_weakly_closed_labeling, Graph, Labeling,
    LabelingSearch, OrderingMode, DEFAULT_LABELING_BUDGET,
};
use beideal::groebner::{prime_generators, Oracle, OracleIdeal};
use beideal::poly::{expand, witness_power_outside_frobenius, Atom, Monomial, Poly, PrimeField};
use beideal::primes::{classify_primes, enumerate_minimal_primes};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Ordered compositions of `n` (all parts positive).
fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Size vectors of complete multipartite graphs on `2..=max_d` vertices.
fn multipartite_sizes(max_d: usize) -> Vec<Vec<usize>> {
    (2..=max_d)
        .flat_map(compositions)
        .filter(|c| c.len() >= 2)
        .collect()
}

/// `(n0, parts)` with at least one part and `n0 + Σ parts <= max_d`.
fn join_params(max_d: usize) -> Vec<(usize, Vec<usize>)> {
    let mut out = Vec::new();
    for d in 2..=max_d {
        for n0 in 1..d {
            for parts in compositions(d - n0) {
                out.push((n0, parts));
            }
        }
    }
    out
}

/// Leg vectors with spine length in `2..=max_l`, interior legs summing to at
/// most `max_legs`, and at most `max_d` vertices.
fn caterpillar_specs(max_l: usize, max_legs: usize, max_d: usize) -> Vec<CaterpillarSpec> {
    fn fill(slots: usize, budget: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            out.push(prefix.clone());
            return;
        }
        for a in 0..=budget {
            prefix.push(a);
            fill(slots - 1, budget - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for l in 2..=max_l {
        let mut interiors = Vec::new();
        fill(l - 2, max_legs, &mut Vec::new(), &mut interiors);
        for interior in interiors {
            let mut legs = vec![0];
            legs.extend(interior);
            legs.push(0);
            let spec = CaterpillarSpec::new(legs).expect("endpoints carry no legs");
            if spec.vertex_count() <= max_d {
                out.push(spec);
            }
        }
    }
    out
}

fn describe_fail(name: &str, c: &Certificate) -> String {
    format!(
        "{name}: verdict fail (frobenius {}, blocking {:?})",
        c.frobenius_ok, c.blocking
    )
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    for sizes in multipartite_sizes(8) {
        let g = complete_multipartite(&sizes).map_err(err)?;
        let found: BTreeSet<Vec<usize>> = enumerate_minimal_primes(&g)
            .map_err(err)?
            .into_iter()
            .map(|p| p.cut_set)
            .collect();
        let mut expected = BTreeSet::from([vec![]]);
        let mut start = 1;
        for &n in &sizes {
            let complement: Vec<usize> = (1..=g.d()).filter(|v| !(start..start + n).contains(v)).collect();
            if n >= 2 {
                expected.insert(complement);
            } else {
                ensure(!found.contains(&complement), || {
                    format!("{sizes:?}: complement of singleton part listed as a cut set")
                })?;
            }
            start += n;
        }
        ensure(found == expected, || format!("{sizes:?}: cut sets {found:?} != {expected:?}"))?;
        checked += 1;
    }
    let mut joins = 0;
    for (n0, parts) in join_params(8) {
        if n0 > 3 || parts.len() < 2 || parts.iter().any(|&n| n > 3) {
            continue;
        }
        let g = join_of_completes(n0, &parts).map_err(err)?;
        let count = enumerate_minimal_primes(&g).map_err(err)?.len();
        ensure(count == 2, || format!("join({n0},{parts:?}): assCount {count}"))?;
        joins += 1;
    }
    Ok(format!(
        "{checked} multipartite graphs match ∅ + complements of parts of size >= 2; {joins} joins with assCount 2"
    ))
}

fn certify_all(graphs: &[(String, Graph)], ps: &[u64]) -> Result<usize, String> {
    for p in ps {
        let opts = CertifyOptions { p: *p, ..Default::default() };
        for (name, g) in graphs {
            let c = certify_symbolic_fsplit(g, &opts).map_err(err)?;
            ensure(c.passed(), || describe_fail(&format!("{name} p={p}"), &c))?;
        }
    }
    Ok(graphs.len())
}

fn named_multipartite(max_d: usize) -> Result<Vec<(String, Graph)>, String> {
    multipartite_sizes(max_d)
        .into_iter()
        .map(|s| Ok((format!("K{s:?}"), complete_multipartite(&s).map_err(err)?)))
        .collect()
}

fn named_joins(max_d: usize) -> Result<Vec<(String, Graph)>, String> {
    join_params(max_d)
        .into_iter()
        .map(|(n0, parts)| Ok((format!("join({n0},{parts:?})"), join_of_completes(n0, &parts).map_err(err)?)))
        .collect()
}

/// Connected graphs on `d <= max_d` with an unmixed ideal and a Hamiltonian
/// path, relabeled so the path is `1, 2, ..., d`.
fn unmixed_traceable(max_d: usize) -> Result<Vec<Graph>, String> {
    let mut out = Vec::new();
    for d in 2..=max_d {
        for g in connected_graphs(d).map_err(err)? {
            let primes = enumerate_minimal_primes(&g).map_err(err)?;
            let class = classify_primes(&g, &primes).map_err(err)?;
            if !(class.unmixed && class.traceable) {
                continue;
            }
            let path = hamiltonian_path(&g).map_err(err)?.expect("traceable");
            out.push(g.relabel(&Labeling::from_order(&path).map_err(err)?).map_err(err)?);
        }
    }
    Ok(out)
}

/// Connected closed graphs with unmixed ideal, in a closed labeling.
fn closed_unmixed(max_d: usize) -> Result<Vec<Graph>, String> {
    let mut out = Vec::new();
    for d in 2..=max_d {
        for g in connected_graphs(d).map_err(err)? {
            let primes = enumerate_minimal_primes(&g).map_err(err)?;
            if !primes.iter().all(|p| p.height as usize + 1 == d) {
                continue;
            }
            match find_labeling(&g, OrderingMode::Closed, DEFAULT_LABELING_BUDGET) {
                LabelingSearch::Found(l) => out.push(g.relabel(&l).map_err(err)?),
                LabelingSearch::Absent => {}
                LabelingSearch::BudgetExceeded => return Err("closed labeling search out of budget".into()),
            }
        }
    }
    Ok(out)
}

fn criterion_2() -> Outcome {
    let ps = [2, 3];
    let a = certify_all(&named_multipartite(8)?, &ps)?;
    let cats: Vec<(String, Graph)> = caterpillar_specs(5, 5, usize::MAX)
        .into_iter()
        .map(|s| Ok((format!("caterpillar{:?}", s.legs()), caterpillar(&s).map_err(err)?)))
        .collect::<Result<_, String>>()?;
    let b = certify_all(&cats, &ps)?;
    let c = certify_all(&named_joins(8)?, &ps)?;
    let traceable: Vec<(String, Graph)> = unmixed_traceable(6)?
        .into_iter()
        .map(|g| (format!("graph {:?}", g.edges()), g))
        .collect();
    let d = certify_all(&traceable, &ps)?;
    Ok(format!(
        "p in {{2,3}}: {a} multipartite, {b} caterpillars, {c} joins, {d} unmixed traceable graphs all pass"
    ))
}

fn criterion_3() -> Outcome {
    let mut counts = Vec::new();
    for p in [2u64, 3] {
        let opts = CertifyOptions { p, ..Default::default() };
        let mut n = 0;
        for (name, g) in named_joins(8)?.into_iter().chain(named_multipartite(8)?) {
            let y1 = cofactor_position(g.d(), &Atom::Y(1)).map_err(err)?;
            let c = certify_strong_freg(&g, y1, &opts).map_err(err)?;
            ensure(c.passed(), || describe_fail(&format!("{name} p={p}"), &c))?;
            ensure(!c.assumptions.is_empty(), || format!("{name}: assumptions missing"))?;
            n += 1;
        }
        let closed = closed_unmixed(6)?;
        for g in &closed {
            let m12 = cofactor_position(g.d(), &Atom::Minor(1, 2)).map_err(err)?;
            let c = certify_strong_freg(g, m12, &opts).map_err(err)?;
            ensure(c.passed(), || describe_fail(&format!("closed {:?} p={p}", g.edges()), &c))?;
            ensure(!c.assumptions.is_empty(), || "assumptions missing".to_string())?;
        }
        counts.push((n, closed.len()));
    }
    Ok(format!(
        "p in {{2,3}}: {} join/multipartite instances with cofactor y1, {} closed unmixed graphs with cofactor m(1,2) pass",
        counts[0].0, counts[0].1
    ))
}

fn criterion_4() -> Outcome {
    let mut family: Vec<Graph> = Vec::new();
    for (_, g) in named_multipartite(4)?.into_iter().chain(named_joins(4)?) {
        family.push(g);
    }
    for s in caterpillar_specs(4, 2, 4) {
        family.push(caterpillar(&s).map_err(err)?);
    }
    family.extend(unmixed_traceable(4)?);
    family.extend(closed_unmixed(4)?);
    let family: BTreeSet<(usize, Vec<(usize, usize)>)> =
        family.iter().map(|g| (g.d(), g.edges().to_vec())).collect();

    let mut checks = 0;
    let mut equal_everywhere = 0;
    for p in [2u64, 3] {
        let field = PrimeField::new(p).map_err(err)?;
        let mut oracle = Oracle::default();
        for d in 2..=4 {
            let w = canonical_witness_for(d).map_err(err)?;
            let f = expand(&w, p, None).map_err(err)?;
            for g in connected_graphs(d).map_err(err)? {
                let in_family = family.contains(&(d, g.edges().to_vec()));
                for prime in enumerate_minimal_primes(&g).map_err(err)? {
                    let bound = order_lower_bound(&w, &prime);
                    let gens = prime_generators(field, d, &prime);
                    let max_n = bound.max(prime.height) + 1;
                    let exact = oracle.power_membership_order(&f, &gens, max_n).map_err(err)?;
                    ensure(bound <= exact, || {
                        format!("{:?} S={:?} p={p}: bound {bound} > exact {exact}", g.edges(), prime.cut_set)
                    })?;
                    if in_family {
                        ensure(bound == exact, || {
                            format!("family {:?} S={:?} p={p}: bound {bound} != exact {exact}", g.edges(), prime.cut_set)
                        })?;
                    }
                    checks += 1;
                    equal_everywhere += (bound == exact) as usize;
                }
            }
        }
    }
    Ok(format!(
        "{checks} (graph, prime, p) checks sound; {equal_everywhere} of them exact, family instances all exact"
    ))
}

fn criterion_5() -> Outcome {
    let mut n = 0;
    for d in 2..=5 {
        for g in connected_graphs(d).map_err(err)? {
            let w = canonical_witness(&g).map_err(err)?;
            for p in [2u64, 3] {
                let ok = witness_power_outside_frobenius(&w, p).map_err(err)?;
                ensure(ok, || format!("d={d} {:?} p={p}: f^(p-1) in the bracket", g.edges()))?;
                n += 1;
            }
        }
    }
    for d in 2..=6 {
        let w = canonical_witness_for(d).map_err(err)?;
        for p in [3u64, 5, 7] {
            let f = expand(&w, p, None).map_err(err)?;
            let c = f.coefficient(&Monomial::from_exponents(vec![1; 2 * d]));
            ensure(c == 1 || c == p as u32 - 1, || format!("d={d} p={p}: coefficient {c}"))?;
        }
    }
    Ok(format!("{n} Frobenius checks true; squarefree coefficient ±1 for d <= 6"))
}

fn criterion_6() -> Outcome {
    let mut n = 0;
    for p in [2u64, 3] {
        let field = PrimeField::new(p).map_err(err)?;
        let var = |i: usize| Poly::var(field, 3, i);
        let ideal = |gens: Vec<Poly>| OracleIdeal::new(field, 3, gens).map_err(err);
        let cases = [
            (vec![var(0)], vec![var(1), var(2)]),
            (vec![var(0), var(1)], vec![var(1), var(2)]),
        ];
        for (q1, q2) in cases {
            let q = [ideal(q1)?, ideal(q2)?];
            let symbolic = |a: u32| -> Result<OracleIdeal, String> {
                q[0].power(a).intersect(&q[1].power(a)).map_err(err)
            };
            for a in 1..=2 {
                for b in 1..=2 {
                    let lhs = symbolic(a)?
                        .frobenius_bracket(p as u32)
                        .colon(&symbolic(b)?)
                        .map_err(err)?;
                    let parts: Vec<OracleIdeal> = q
                        .iter()
                        .map(|qi| qi.power(a).frobenius_bracket(p as u32).colon(&qi.power(b)).map_err(err))
                        .collect::<Result<_, _>>()?;
                    let rhs = parts[0].intersect(&parts[1]).map_err(err)?;
                    ensure(lhs.equals(&rhs).map_err(err)?, || {
                        format!("p={p} a={a} b={b}: colon identity fails")
                    })?;
                    n += 1;
                }
            }
        }
    }
    Ok(format!("{n} instances of the colon identity hold as ideal equalities"))
}

/// Blocks `F_n` and `∘`-chains of `F_{n_j}` (`n_j >= 3`) on at most `max_d` vertices.
fn accessible_blocks(max_d: usize) -> Result<Vec<(String, Graph)>, String> {
    let mut blocks = Vec::new();
    for n in 1..=max_d / 2 {
        blocks.push((format!("F{n}"), f_m(n).map_err(err)?));
    }
    let mut frontier: Vec<(String, Graph)> = (3..=max_d / 2)
        .map(|n| Ok((format!("F{n}"), f_m(n).map_err(err)?)))
        .collect::<Result<_, String>>()?;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (name, g) in &frontier {
            for n in 3.. {
                if g.d() + 2 * n - 3 > max_d {
                    break;
                }
                let h = f_m(n).map_err(err)?;
                let c = circ_compose(g, g.d(), &h, 1).map_err(err)?;
                next.push((format!("{name}∘F{n}"), c));
            }
        }
        blocks.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(blocks)
}

fn star_chains(max_d: usize) -> Result<Vec<(String, Graph)>, String> {
    let blocks = accessible_blocks(max_d)?;
    let mut all = blocks.clone();
    let mut frontier = blocks.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (name, g) in &frontier {
            for (bname, b) in &blocks {
                if g.d() + b.d() - 1 > max_d {
                    continue;
                }
                let s = star_compose(g, g.d(), b, 1).map_err(err)?;
                next.push((format!("{name}*{bname}"), s));
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(all)
}

fn spider() -> Graph {
    Graph::new(7, [(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)]).expect("spider")
}

fn all_permutations(d: usize) -> Vec<Vec<usize>> {
    if d == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_permutations(d - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, d);
            out.push(q);
        }
    }
    out
}

fn criterion_7() -> Outcome {
    let identity_ok = |name: &str, g: &Graph| {
        ensure(is_weakly_closed_labeling(g, &Labeling::identity(g.d())), || {
            format!("{name}: identity labeling not weakly closed")
        })
    };
    for m in 1..=5 {
        identity_ok(&format!("G{m}"), &g_m(m).map_err(err)?)?;
    }
    let cats = caterpillar_specs(10, 8, 10);
    for s in &cats {
        identity_ok(&format!("caterpillar{:?}", s.legs()), &caterpillar(s).map_err(err)?)?;
    }
    let joins = named_joins(10)?;
    for (name, g) in &joins {
        identity_ok(name, g)?;
    }
    let chains = star_chains(10)?;
    for (name, g) in &chains {
        identity_ok(name, g)?;
    }
    let mut labelings = 0usize;
    for d in 2..=7 {
        let perms: Vec<Labeling> = all_permutations(d)
            .into_iter()
            .map(|p| Labeling::new(p).expect("permutation"))
            .collect();
        for sizes in multipartite_sizes(d).into_iter().filter(|s| s.iter().sum::<usize>() == d) {
            let g = complete_multipartite(&sizes).map_err(err)?;
            for l in &perms {
                ensure(is_weakly_closed_labeling(&g, l), || {
                    format!("K{sizes:?} under {:?} not weakly closed", l.as_slice())
                })?;
                labelings += 1;
            }
        }
    }
    let spider = spider();
    let perms = all_permutations(7);
    ensure(perms.len() == 5040, || "expected 5040 labelings".into())?;
    for p in perms {
        let l = Labeling::new(p).map_err(err)?;
        ensure(!is_weakly_closed_labeling(&spider, &l), || {
            format!("spider is weakly closed under {:?}", l.as_slice())
        })?;
    }
    ensure(
        find_labeling(&spider, OrderingMode::WeaklyClosed, DEFAULT_LABELING_BUDGET) == LabelingSearch::Absent,
        || "backtracking search disagrees on the spider".into(),
    )?;
    Ok(format!(
        "G1..G5, {} caterpillars, {} joins, {} star/circ chains weakly closed; {labelings} multipartite labelings pass; spider fails all 5040",
        cats.len(),
        joins.len(),
        chains.len()
    ))
}

fn criterion_8() -> Outcome {
    let g = Graph::new(5, [(1, 2), (1, 3), (1, 4), (1, 5), (2, 4), (3, 5)]).map_err(err)?;
    let plain = certify_symbolic_fsplit(&g, &CertifyOptions::default()).map_err(err)?;
    ensure(!plain.passed(), || "identity labeling unexpectedly passes".into())?;
    let at_1 = plain
        .per_prime
        .iter()
        .find(|pb| pb.cut_set == vec![1])
        .ok_or("S={1} missing")?;
    ensure(at_1.bound == 2 && at_1.height == 4, || {
        format!("S={{1}}: bound {} height {}", at_1.bound, at_1.height)
    })?;
    ensure(
        plain.blocking.as_ref().is_some_and(|b| b.cut_set == vec![1] && b.deficit == 2),
        || format!("blocking {:?}", plain.blocking),
    )?;
    let searched = certify_symbolic_fsplit(
        &g,
        &CertifyOptions { search_labelings: true, ..Default::default() },
    )
    .map_err(err)?;
    ensure(searched.passed(), || "search found no passing labeling".into())?;
    Ok(format!(
        "identity fails at S={{1}} (bound 2 < height 4); search passes with labeling {:?}",
        searched.labeling_used.as_slice()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("minimal-prime structure", criterion_1, Duration::from_secs(10)),
        ("symbolic F-split families", criterion_2, Duration::from_secs(300)),
        ("strong F-regular families", criterion_3, Duration::from_secs(300)),
        ("oracle agreement", criterion_4, Duration::from_secs(600)),
        ("Frobenius check", criterion_5, Duration::from_secs(300)),
        ("colon identity", criterion_6, Duration::from_secs(60)),
        ("weakly closed suite", criterion_7, Duration::from_secs(120)),
        ("negative control", criterion_8, Duration::from_secs(60)),
    ];
    let mut failures = 0;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(detail) if elapsed <= *limit => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("{detail}; took longer than {limit:?}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("[{status}] {} {name}: {detail} ({:.2}s)", k + 1, elapsed.as_secs_f64());
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
