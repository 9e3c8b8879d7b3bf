//! Property suites over the exhaustive small-graph corpus.
//!
//! Every property is tallied separately; the first failure (corpus order,
//! then lexicographic order of divisors) is kept as a serialized
//! counterexample.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use indexmap::IndexMap;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::brute::{spanning_tree_count, spanning_trees_avoiding, FiringClosure};
use crate::corpus::{self, CorpusSpec};
use crate::divisor::{canonical_divisor, t_v, Divisor, RationalFunction};
use crate::document::GraphDocument;
use crate::error::Result;
use crate::graph::{bullet_model, contract, Graph};
use crate::picard::{
    enumerate_classes, picard_structure, PrincipalLattice, Reducer, DEFAULT_CLASS_CAP,
};
use crate::rank::{kz_bound, rank_weightless, RankEngine};
use crate::transforms::{
    balance_report, find_semibalanced_representative, verify_prin_pushforward,
};

/// Largest residue space the chip-firing oracle will explore.
const CLOSURE_STATES: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Structure,
    Principal,
    Picard,
    Equivalence,
    RiemannRoch,
    Rank,
    Contraction,
    Semibalanced,
    Documents,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Structure,
        Suite::Principal,
        Suite::Picard,
        Suite::Equivalence,
        Suite::RiemannRoch,
        Suite::Rank,
        Suite::Contraction,
        Suite::Semibalanced,
        Suite::Documents,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Structure => "structure",
            Suite::Principal => "principal",
            Suite::Picard => "picard",
            Suite::Equivalence => "equivalence",
            Suite::RiemannRoch => "riemann-roch",
            Suite::Rank => "rank",
            Suite::Contraction => "contraction",
            Suite::Semibalanced => "semibalanced",
            Suite::Documents => "documents",
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub corpus: CorpusSpec,
    /// Divisors range over `[-coeff_bound, coeff_bound]^V`.
    pub coeff_bound: i64,
    /// Upper limit on the degree of divisors fed to rank-based checks.
    pub max_degree: Option<i64>,
    /// Random rational functions per graph for the principal suite.
    pub random_functions: usize,
    pub seed: u64,
    pub suites: Vec<Suite>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            corpus: CorpusSpec::default(),
            coeff_bound: 3,
            max_degree: None,
            random_functions: 1000,
            seed: 0x5eed,
            suites: Suite::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// The graph, with the offending divisors stored by name.
    pub document: GraphDocument,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub suite: Suite,
    pub name: &'static str,
    pub checked: u64,
    pub failed: u64,
    pub counterexample: Option<Counterexample>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub graphs: usize,
    pub properties: Vec<PropertyReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyReport::passed)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyReport> {
        self.properties.iter().find(|p| p.name == name)
    }

    pub fn suite(&self, suite: Suite) -> impl Iterator<Item = &PropertyReport> {
        self.properties.iter().filter(move |p| p.suite == suite)
    }
}

#[derive(Default)]
struct Tally(IndexMap<&'static str, PropertyReport>);

impl Tally {
    fn declare(&mut self, suite: Suite, name: &'static str) {
        self.0.entry(name).or_insert(PropertyReport {
            suite,
            name,
            checked: 0,
            failed: 0,
            counterexample: None,
        });
    }

    fn record(&mut self, name: &'static str, ok: bool, example: impl FnOnce() -> Counterexample) {
        let report = self.0.get_mut(name).expect("property declared");
        report.checked += 1;
        if !ok {
            report.failed += 1;
            if report.counterexample.is_none() {
                report.counterexample = Some(example());
            }
        }
    }
}

fn example(graph: &Graph, divisors: &[(&str, &[i64])], detail: String) -> Counterexample {
    let mut document = GraphDocument::from_graph(graph);
    for (name, coeffs) in divisors {
        document.divisors.insert(name.to_string(), coeffs.to_vec());
    }
    Counterexample { document, detail }
}

/// All vectors in `[-b, b]^n`, lexicographically.
fn box_vectors(n: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (-b..=b).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn degree(d: &[i64]) -> i64 {
    d.iter().sum()
}

fn div(graph: &Graph, coeffs: &[i64]) -> Divisor {
    Divisor::new(graph, coeffs.to_vec()).expect("length matches graph")
}

fn semistable(graph: &Graph) -> bool {
    (0..graph.vertex_count()).all(|v| graph.weight(v) > 0 || graph.valency(v).unwrap_or(0) >= 2)
}

/// Runs the configured suites over the corpus.
pub fn run(config: &VerifyConfig) -> Result<VerifyReport> {
    let graphs = corpus::enumerate(&config.corpus)?;
    let mut tally = Tally::default();
    for &suite in &Suite::ALL {
        if config.suites.contains(&suite) {
            for name in property_names(suite) {
                tally.declare(suite, name);
            }
        }
    }
    for (index, graph) in graphs.iter().enumerate() {
        let mut ctx = Context::new(graph, index, config);
        for &suite in &config.suites {
            ctx.run(suite, &mut tally)?;
        }
    }
    if config.suites.contains(&Suite::Contraction) {
        semicontinuity_fixtures(&mut tally)?;
    }
    Ok(VerifyReport {
        graphs: graphs.len(),
        properties: tally.0.into_values().collect(),
    })
}

fn property_names(suite: Suite) -> &'static [&'static str] {
    match suite {
        Suite::Structure => &[
            "bullet_model",
            "contraction_genus",
            "intersection_symmetry",
            "canonical_degree",
        ],
        Suite::Principal => &[
            "principal_degree_zero",
            "principal_additivity",
            "min_set_inequality",
        ],
        Suite::Picard => &[
            "t_v_sum_zero",
            "complexity_agreement",
            "class_count_constant",
            "reduction_idempotent",
            "reduction_class_invariant",
        ],
        Suite::Equivalence => &["equivalence_oracles"],
        Suite::RiemannRoch => &["riemann_roch"],
        Suite::Rank => &[
            "degree_bound",
            "equivalence_invariance",
            "clifford",
            "superadditivity",
            "degree_zero_dichotomy",
            "canonical_degree_dichotomy",
            "high_degree",
            "kz_bound",
            "weightless_agreement",
        ],
        Suite::Contraction => &[
            "prin_pushforward",
            "pushforward_homomorphism",
            "bridge_rank_preservation",
            "nonbridge_complexity",
            "semicontinuity_fixtures",
        ],
        Suite::Semibalanced => &[
            "semibalanced_representative",
            "balanced_implies_semibalanced",
        ],
        Suite::Documents => &["document_round_trip"],
    }
}

struct Context<'a> {
    graph: &'a Graph,
    config: &'a VerifyConfig,
    genus: i64,
    boxed: Vec<Vec<i64>>,
    engine: RankEngine,
    lattice: PrincipalLattice,
    reducer: Reducer,
    rng: ChaCha8Rng,
}

impl<'a> Context<'a> {
    fn new(graph: &'a Graph, index: usize, config: &'a VerifyConfig) -> Context<'a> {
        Context {
            graph,
            config,
            genus: graph.genus(),
            boxed: box_vectors(graph.vertex_count(), config.coeff_bound),
            engine: RankEngine::new(graph),
            lattice: PrincipalLattice::new(graph),
            reducer: Reducer::new(graph, 0).expect("vertex 0 exists"),
            rng: ChaCha8Rng::seed_from_u64(
                config.seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15),
            ),
        }
    }

    fn degree_cap(&self) -> i64 {
        self.config.max_degree.unwrap_or(i64::MAX)
    }

    /// Box divisors whose degree lies in `[-2, min(2g, max_degree)]`.
    fn rank_set(&self) -> Vec<Vec<i64>> {
        let top = (2 * self.genus).min(self.degree_cap());
        self.boxed
            .iter()
            .filter(|d| (-2..=top).contains(&degree(d)))
            .cloned()
            .collect()
    }

    fn random_function(&mut self, spread: i64) -> Vec<i64> {
        (0..self.graph.vertex_count())
            .map(|_| self.rng.gen_range(-spread..=spread))
            .collect()
    }

    fn run(&mut self, suite: Suite, tally: &mut Tally) -> Result<()> {
        match suite {
            Suite::Structure => self.structure(tally),
            Suite::Principal => self.principal(tally),
            Suite::Picard => self.picard(tally),
            Suite::Equivalence => self.equivalence(tally),
            Suite::RiemannRoch => self.riemann_roch(tally),
            Suite::Rank => self.rank(tally),
            Suite::Contraction => self.contraction(tally),
            Suite::Semibalanced => self.semibalanced(tally),
            Suite::Documents => self.documents(tally),
        }
    }

    fn structure(&mut self, tally: &mut Tally) -> Result<()> {
        let g = self.graph;
        let model = bullet_model(g);
        let again = bullet_model(&model.bullet);
        let ok = model.bullet.genus() == self.genus
            && model.bullet.is_weightless()
            && model.bullet.is_loopless()
            && again.bullet == model.bullet;
        tally.record("bullet_model", ok, || {
            example(g, &[], format!("model has genus {}", model.bullet.genus()))
        });

        let plain: Vec<usize> = (0..g.edge_count())
            .filter(|&e| g.edges()[e].0 != g.edges()[e].1)
            .collect();
        for mask in 0u32..1 << plain.len() {
            let set: Vec<usize> = (0..plain.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| plain[i])
                .collect();
            let cm = contract(g, &set)?;
            tally.record("contraction_genus", cm.target.genus() == self.genus, || {
                example(
                    g,
                    &[],
                    format!("contracting {set:?} gives genus {}", cm.target.genus()),
                )
            });
        }

        let n = g.vertex_count();
        for v in 0..n {
            let symmetric =
                (0..n).all(|w| g.intersection_number(v, w) == g.intersection_number(w, v));
            let row: i64 = (0..n).map(|w| g.intersection_number(v, w)).sum();
            tally.record("intersection_symmetry", symmetric && row == 0, || {
                example(g, &[], format!("row {v} has sum {row}"))
            });
        }

        let k = canonical_divisor(g);
        tally.record("canonical_degree", k.degree() == 2 * self.genus - 2, || {
            example(g, &[("k", k.coeffs())], "deg k != 2g - 2".into())
        });
        Ok(())
    }

    fn principal(&mut self, tally: &mut Tally) -> Result<()> {
        let g = self.graph;
        for _ in 0..self.config.random_functions {
            let f = self.random_function(5);
            let h = self.random_function(5);
            let df = RationalFunction::new(g, f.clone())?.principal_divisor();
            let dh = RationalFunction::new(g, h.clone())?.principal_divisor();
            let dsum = RationalFunction::new(g, add(&f, &h))?.principal_divisor();
            let neg: Vec<i64> = f.iter().map(|x| -x).collect();
            let dneg = RationalFunction::new(g, neg)?.principal_divisor();

            tally.record("principal_degree_zero", df.degree() == 0, || {
                example(g, &[("f", &f)], format!("div f has degree {}", df.degree()))
            });
            let additive = dsum == df.try_add(&dh)? && dneg == -&df;
            tally.record("principal_additivity", additive, || {
                example(
                    g,
                    &[("f", &f), ("h", &h)],
                    "div(f + h) != div f + div h".into(),
                )
            });

            let min = *f.iter().min().expect("nonempty");
            let z: Vec<usize> = (0..f.len()).filter(|&v| f[v] == min).collect();
            let ok = df.restrict(&z)? <= -g.cut_size(&z) && z.iter().all(|&v| df[v] <= 0);
            tally.record("min_set_inequality", ok, || {
                example(
                    g,
                    &[("f", &f)],
                    format!("minimum set {z:?} violates the bound"),
                )
            });
        }
        Ok(())
    }

    fn picard(&mut self, tally: &mut Tally) -> Result<()> {
        let g = self.graph;
        let n = g.vertex_count();
        let mut total = vec![0; n];
        for v in 0..n {
            total = add(&total, t_v(g, v)?.coeffs());
        }
        tally.record("t_v_sum_zero", total.iter().all(|&x| x == 0), || {
            example(g, &[("sum", &total)], "sum of t_v is not zero".into())
        });

        let complexity = g.complexity();
        let structure = picard_structure(g);
        let brute = BigInt::from(spanning_tree_count(g));
        let agree = structure.order == complexity && complexity == brute;
        tally.record("complexity_agreement", agree, || {
            example(
                g,
                &[],
                format!(
                    "picard order {}, determinant {complexity}, spanning trees {brute}",
                    structure.order
                ),
            )
        });

        let mut degrees = vec![-1, 0, 1, self.genus];
        degrees.dedup();
        for d in degrees {
            let count = enumerate_classes(g, d, DEFAULT_CLASS_CAP)?.len();
            tally.record(
                "class_count_constant",
                BigInt::from(count) == complexity,
                || {
                    example(
                        g,
                        &[],
                        format!("degree {d} has {count} classes, expected {complexity}"),
                    )
                },
            );
        }

        for d in &self.boxed {
            let r = self.reducer.reduce(d);
            let idempotent = self.reducer.reduce(&r) == r && self.reducer.is_reduced(&r);
            tally.record("reduction_idempotent", idempotent, || {
                example(
                    g,
                    &[("d", d), ("reduced", &r)],
                    "reduction is not idempotent".into(),
                )
            });
            let same_class = self.lattice.contains_coeffs(&sub(d, &r));
            tally.record("reduction_class_invariant", same_class, || {
                example(
                    g,
                    &[("d", d), ("reduced", &r)],
                    "reduced form left the class".into(),
                )
            });
        }
        Ok(())
    }

    /// Lattice membership, reduced forms and the chip-firing closure must
    /// induce the same partition of the box. Group by reduced form, then
    /// check members against the group's first element and group leaders
    /// against each other.
    fn equivalence(&mut self, tally: &mut Tally) -> Result<()> {
        let g = self.graph;
        let Some(closure) = FiringClosure::new(g, CLOSURE_STATES) else {
            return Ok(());
        };
        let mut leaders: BTreeMap<Vec<i64>, Vec<i64>> = BTreeMap::new();
        for d in &self.boxed {
            match leaders.entry(self.reducer.reduce(d)) {
                Entry::Vacant(slot) => {
                    slot.insert(d.clone());
                }
                Entry::Occupied(slot) => {
                    let leader = slot.get();
                    let ok = self.lattice.contains_coeffs(&sub(d, leader))
                        && closure.equivalent(d, leader);
                    tally.record("equivalence_oracles", ok, || {
                        example(
                            g,
                            &[("d1", leader), ("d2", d)],
                            "same reduced form but an oracle says inequivalent".into(),
                        )
                    });
                }
            }
        }
        let mut by_degree: HashMap<i64, Vec<&Vec<i64>>> = HashMap::new();
        for leader in leaders.values() {
            by_degree.entry(degree(leader)).or_default().push(leader);
        }
        let mut degrees: Vec<i64> = by_degree.keys().copied().collect();
        degrees.sort();
        for deg in degrees {
            let group = &by_degree[&deg];
            for (i, a) in group.iter().enumerate() {
                for b in &group[i + 1..] {
                    let ok = !self.lattice.contains_coeffs(&sub(a, b)) && !closure.equivalent(a, b);
                    tally.record("equivalence_oracles", ok, || {
                        example(
                            g,
                            &[("d1", a), ("d2", b)],
                            "different reduced forms but an oracle says equivalent".into(),
                        )
                    });
                }
            }
        }
        Ok(())
    }

    fn riemann_roch(&mut self, tally: &mut Tally) -> Result<()> {
        let g = self.graph;
        for d in self.rank_set() {
            let rr = self.engine.riemann_roch(&div(g, &d))?;
            tally.record("riemann_roch", rr.holds(), || {
                example(
                    g,
                    &[("d", &d)],
                    format!(
                        "r(d) = {}, r(k - d) = {}, expected difference {}",
                        rr.rank, rr.dual_rank, rr.expected
                    ),
                )
            });
        }
        Ok(())
    }

    fn rank(&mut self, tally: &mut Tally) -> Result<()> {
        let g = self.graph;
        let genus = self.genus;
        let k = canonical_divisor(g);
        let set = self.rank_set();
        let mut classes: BTreeMap<Vec<i64>, i64> = BTreeMap::new();

        for d in &set {
            let deg = degree(d);
            let r = self.engine.rank_value(&div(g, d))?;
            if r >= 0 {
                classes.entry(self.reducer.reduce(d)).or_insert(r);
            }

            let bounded = r <= deg.max(-1) && (deg >= 0 || r == -1);
            tally.record("degree_bound", bounded, || {
                example(g, &[("d", d)], format!("rank {r} exceeds max(-1, {deg})"))
            });

            if deg.abs() <= 4 {
                let f = self.random_function(2);
                let p = RationalFunction::new(g, f)?.principal_divisor();
                let moved = add(d, p.coeffs());
                let r2 = self.engine.rank_on_model(&moved);
                tally.record("equivalence_invariance", r == r2, || {
                    example(
                        g,
                        &[("d", d), ("d_plus_p", &moved)],
                        format!("ranks {r} and {r2}"),
                    )
                });
            }

            if (0..=2 * genus - 2).contains(&deg) {
                let ok = self.engine.clifford(&div(g, d))?;
                tally.record("clifford", ok, || {
                    example(g, &[("d", d)], format!("rank {r} exceeds {deg}/2"))
                });
            }

            if deg == 0 {
                let principal = self.lattice.contains_coeffs(d);
                let ok = r <= 0 && (r == 0) == principal;
                tally.record("degree_zero_dichotomy", ok, || {
                    example(g, &[("d", d)], format!("rank {r}, principal {principal}"))
                });
            }
            if deg == 2 * genus - 2 {
                let canonical = self.lattice.contains_coeffs(&sub(d, k.coeffs()));
                let ok = r < genus && (r == genus - 1) == canonical;
                tally.record("canonical_degree_dichotomy", ok, || {
                    example(
                        g,
                        &[("d", d)],
                        format!("rank {r}, equivalent to k: {canonical}"),
                    )
                });
            }
            if deg >= 2 * genus - 1 {
                tally.record("high_degree", r == deg - genus, || {
                    example(
                        g,
                        &[("d", d)],
                        format!("rank {r}, expected {}", deg - genus),
                    )
                });
            }

            for v in 0..g.vertex_count() {
                for bound in 0..=3u32 {
                    if kz_bound(g, &div(g, d), v, bound)? {
                        tally.record("kz_bound", r < bound as i64, || {
                            example(
                                g,
                                &[("d", d)],
                                format!("hypotheses hold at vertex {v} with r = {bound}, but rank is {r}"),
                            )
                        });
                    }
                }
            }
        }

        // superadditivity over pairs of effective classes, total degree within range
        let top = (2 * genus).max(2).min(self.degree_cap());
        let reps: Vec<(Vec<i64>, i64)> = classes.into_iter().collect();
        for (i, (a, ra)) in reps.iter().enumerate() {
            for (b, rb) in &reps[i..] {
                let sum = add(a, b);
                if degree(&sum) > top {
                    continue;
                }
                let rs = self.engine.rank_value(&div(g, &sum))?;
                tally.record("superadditivity", ra + rb <= rs, || {
                    example(g, &[("d1", a), ("d2", b)], format!("{ra} + {rb} > {rs}"))
                });
            }
        }

        if g.is_weightless() && g.is_loopless() {
            for d in [Divisor::zero(g), k.clone()] {
                let expected = self.engine.rank_value(&d)?;
                let direct = rank_weightless(&d)?.value;
                tally.record("weightless_agreement", expected == direct, || {
                    example(g, &[("d", d.coeffs())], format!("{expected} != {direct}"))
                });
            }
        }
        Ok(())
    }

    fn contraction(&mut self, tally: &mut Tally) -> Result<()> {
        let g = self.graph;
        let n = g.vertex_count();
        let complexity = g.complexity();
        for e in 0..g.edge_count() {
            let (a, b) = g.edges()[e];
            if a == b {
                continue;
            }
            let cm = contract(g, &[e])?;
            let target = &cm.target;
            tally.record("prin_pushforward", verify_prin_pushforward(&cm)?, || {
                example(g, &[], format!("edge {e}: target generators not reached"))
            });

            let mut homomorphic = true;
            for v in 0..n {
                let ev = div(g, &unit(n, v)).into_coeffs();
                for w in 0..n {
                    let ew = unit(n, w);
                    let lhs = cm.push_coeffs(&add(&ev, &ew));
                    let rhs = add(&cm.push_coeffs(&ev), &cm.push_coeffs(&ew));
                    homomorphic &= lhs == rhs && degree(&lhs) == 2;
                }
            }
            let onto = (0..target.vertex_count()).all(|u| {
                (0..n).any(|v| cm.push_coeffs(&unit(n, v)) == unit(target.vertex_count(), u))
            });
            tally.record("pushforward_homomorphism", homomorphic && onto, || {
                example(
                    g,
                    &[],
                    format!("edge {e}: push-forward is not a surjective homomorphism"),
                )
            });

            if g.is_bridge(e)? {
                let same_group = picard_structure(g).invariant_factors
                    == picard_structure(target).invariant_factors;
                tally.record("bridge_rank_preservation", same_group, || {
                    example(g, &[], format!("edge {e}: Picard groups differ"))
                });
                let mut target_engine = RankEngine::new(target);
                for d in &self.boxed {
                    let deg = degree(d);
                    if deg.abs() > 4 || deg > self.degree_cap() {
                        continue;
                    }
                    let before = self.engine.rank_value(&div(g, d))?;
                    let after = target_engine.rank_value(&div(target, &cm.push_coeffs(d)))?;
                    tally.record("bridge_rank_preservation", before == after, || {
                        example(
                            g,
                            &[("d", d)],
                            format!("edge {e}: rank {before} becomes {after}"),
                        )
                    });
                }
            } else {
                let contracted = target.complexity();
                let avoiding = BigInt::from(spanning_trees_avoiding(g, e));
                let ok = complexity == &contracted + &avoiding && complexity > contracted;
                tally.record("nonbridge_complexity", ok, || {
                    example(
                        g,
                        &[],
                        format!("edge {e}: c(G) = {complexity}, c(G/e) = {contracted}, avoiding = {avoiding}"),
                    )
                });
            }
        }
        Ok(())
    }

    fn semibalanced(&mut self, tally: &mut Tally) -> Result<()> {
        let g = self.graph;
        let genus = self.genus;
        if genus < 2 || !semistable(g) {
            return Ok(());
        }
        for d in &self.boxed {
            let report = balance_report(g, &div(g, d))?;
            tally.record(
                "balanced_implies_semibalanced",
                !report.balanced || report.semibalanced,
                || example(g, &[("d", d)], "balanced but not semibalanced".into()),
            );
        }
        for deg in [2 * genus - 1, 2 * genus] {
            if deg > self.degree_cap() {
                continue;
            }
            for class in enumerate_classes(g, deg, DEFAULT_CLASS_CAP)? {
                let rep = find_semibalanced_representative(g, &class)?;
                let same = self
                    .lattice
                    .contains_coeffs(&sub(rep.coeffs(), class.coeffs()));
                let semibalanced = balance_report(g, &rep)?.semibalanced;
                let r = self.engine.rank_value(&rep)?;
                tally.record(
                    "semibalanced_representative",
                    same && semibalanced && r == deg - genus,
                    || {
                        example(
                            g,
                            &[("class", class.coeffs()), ("representative", rep.coeffs())],
                            format!("same class {same}, semibalanced {semibalanced}, rank {r}"),
                        )
                    },
                );
            }
        }
        Ok(())
    }

    fn documents(&mut self, tally: &mut Tally) -> Result<()> {
        let g = self.graph;
        let doc = GraphDocument::from_graph(g);
        let text = doc.to_json();
        let back = GraphDocument::from_json(&text)?;
        let ok = back == doc && back.to_json() == text && back.to_graph()? == *g;
        tally.record("document_round_trip", ok, || {
            example(g, &[], "document does not round-trip".into())
        });
        Ok(())
    }
}

fn unit(n: usize, v: usize) -> Vec<i64> {
    let mut e = vec![0; n];
    e[v] = 1;
    e
}

/// Rank changes along the contraction of the fourth edge of the genus-2
/// graph with edges v1v2, v1v2, v1v3, v2v3: drop, rise, and rise by one.
fn semicontinuity_fixtures(tally: &mut Tally) -> Result<()> {
    let g = Graph::build(
        &[("v1", 0), ("v2", 0), ("v3", 0)],
        &[("v1", "v2"), ("v1", "v2"), ("v1", "v3"), ("v2", "v3")],
    )?;
    let cm = contract(&g, &[3])?;
    let mut source = RankEngine::new(&g);
    let mut target = RankEngine::new(&cm.target);
    let cases: [(&[i64], i64, i64); 3] = [
        (&[-2, 3, -1], 0, -1),
        (&[1, -1, 1], -1, 0),
        (&[1, -1, 2], 0, 1),
    ];
    for (d, before, after) in cases {
        let got_before = source.rank_value(&div(&g, d))?;
        let got_after = target.rank_value(&div(&cm.target, &cm.push_coeffs(d)))?;
        tally.record(
            "semicontinuity_fixtures",
            got_before == before && got_after == after,
            || {
                example(
                    &g,
                    &[("d", d)],
                    format!("ranks {got_before} -> {got_after}, expected {before} -> {after}"),
                )
            },
        );
    }
    Ok(())
}
