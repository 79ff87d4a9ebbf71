use std::collections::BTreeMap;

use cechtower_core::cochain::{bar_complex, GroupAction, DEFAULT_BAR_BUDGET};
use cechtower_core::exactseq::LongExactSequence;
use cechtower_core::json::{
    bigints_value, class_value, cochain_value, edge_values, group_value, matrix_value, parse_cochain,
    parse_complex, parse_extension, parse_finite_group, parse_group, parse_matrix, parse_ses,
    parse_tower_spec, parse_transition, tower_value, Node,
};
use cechtower_core::liftgerbe::{brute_force_lift, lifting_obstruction, section_independence, DEFAULT_LIFT_BUDGET};
use cechtower_core::spectral::{check_degeneration, les_direct_sum};
use cechtower_core::tower::{tower_classes, verify_tower};
use cechtower_core::{
    CechComplex, CechSequence, CentralExtension, Cochain, Error, FgAbGroup, FilteredComplex, Homomorphism,
    IntMatrix, Result, SimplicialComplex, TowerSpec, TransitionCocycle,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::{Command, Options, Request, VERIFY_SEED, VERIFY_TRIALS};

const DEFAULT_R_MAX: usize = 3;
const DEFAULT_BAR_DEGREE: usize = 3;

pub(crate) struct Outcome {
    pub document: Value,
    pub verified: bool,
}

impl Outcome {
    fn plain(document: Value) -> Self {
        Outcome {
            document,
            verified: true,
        }
    }
}

enum Degrees {
    All,
    One(usize),
}

enum Input {
    Cech {
        complex: CechComplex,
        degrees: Degrees,
    },
    Bar {
        action: GroupAction,
        degrees: Degrees,
    },
    Connecting {
        seq: CechSequence,
        cochain: Cochain,
    },
    Les {
        seq: CechSequence,
        max_degree: Option<usize>,
    },
    Tower(TowerSpec),
    Spectral {
        filtered: FilteredComplex,
        r_max: usize,
    },
    Gerbe {
        ext: CentralExtension,
        transition: TransitionCocycle,
    },
}

pub(crate) fn run(request: &Request) -> Result<Outcome> {
    let root = Node::root(&request.payload);
    if request.command == Command::Validate {
        return validate(&root);
    }
    let input = parse(request.command, &root)?;
    compute(input, &request.options)
}

fn validate(root: &Node) -> Result<Outcome> {
    let (command, payload) = match root.opt("payload")? {
        Some(payload) => {
            let c = root.get("command")?;
            let name = c.str()?;
            let command = Command::from_name(name)
                .filter(|&c| c != Command::Validate)
                .ok_or_else(|| c.error(format!("\"{name}\" is not a command that takes a payload")))?;
            (command, payload)
        }
        None => (infer(root)?, root.clone()),
    };
    parse(command, &payload)?;
    Ok(Outcome::plain(json!({ "valid": true, "command": command.name() })))
}

fn infer(root: &Node) -> Result<Command> {
    let has = |k: &str| root.object().map(|m| m.contains_key(k));
    Ok(if has("extension")? {
        Command::GerbeLift
    } else if has("summands")? {
        Command::Spectral
    } else if has("sequences")? {
        Command::Tower
    } else if has("ses")? && has("cochain")? {
        Command::Connecting
    } else if has("ses")? {
        Command::Les
    } else if has("group")? || has("action")? {
        Command::Cohomology
    } else {
        return Err(root.error("cannot tell which command this document is for"));
    })
}

fn parse(command: Command, root: &Node) -> Result<Input> {
    match command {
        Command::Cohomology => {
            let degrees = parse_degrees(root)?;
            if let Some(a) = root.opt("action")? {
                return Ok(Input::Bar {
                    action: parse_action(&a)?,
                    degrees,
                });
            }
            let site = parse_complex(&root.get("complex")?)?;
            let group = parse_group(&root.get("group")?)?;
            Ok(Input::Cech {
                complex: root.at(CechComplex::new(&site, &group))?,
                degrees,
            })
        }
        Command::Connecting => {
            let seq = parse_sequence(root)?;
            let cochain = parse_cochain(&root.get("cochain")?, seq.over_c())?;
            Ok(Input::Connecting { seq, cochain })
        }
        Command::Les => Ok(Input::Les {
            seq: parse_sequence(root)?,
            max_degree: root.opt("max_degree")?.map(|n| n.usize()).transpose()?,
        }),
        Command::Tower => Ok(Input::Tower(parse_tower_spec(root)?)),
        Command::Spectral => {
            let site = parse_complex(&root.get("complex")?)?;
            let summands_node = root.get("summands")?;
            let summands = summands_node.array()?.iter().map(parse_group).collect::<Result<Vec<_>>>()?;
            let r_max = root.opt("r_max")?.map(|n| n.usize()).transpose()?.unwrap_or(DEFAULT_R_MAX);
            if r_max == 0 {
                return Err(root.get("r_max")?.error("r_max must be at least 1"));
            }
            Ok(Input::Spectral {
                filtered: summands_node.at(FilteredComplex::new(&site, summands))?,
                r_max,
            })
        }
        Command::GerbeLift => {
            let site = parse_complex(&root.get("complex")?)?;
            let ext = parse_extension(&root.get("extension")?)?;
            let transition = parse_transition(&root.get("transition")?, &site, ext.q())?;
            Ok(Input::Gerbe { ext, transition })
        }
        Command::Validate => Err(root.error("validate documents cannot be nested")),
    }
}

fn parse_degrees(root: &Node) -> Result<Degrees> {
    match root.opt("degree")? {
        None => Ok(Degrees::All),
        Some(d) if d.value().as_str() == Some("all") => Ok(Degrees::All),
        Some(d) => d
            .usize()
            .map(Degrees::One)
            .map_err(|_| d.error("expected \"all\" or a non-negative integer")),
    }
}

fn parse_sequence(root: &Node) -> Result<CechSequence> {
    let site = parse_complex(&root.get("complex")?)?;
    let ses_node = root.get("ses")?;
    let ses = parse_ses(&ses_node)?;
    ses_node.at(CechSequence::new(&site, &ses))
}

/// `{"group": finite group, "module": group, "maps": [matrix, ...]}`; a
/// missing `"maps"` means the trivial action.
fn parse_action(node: &Node) -> Result<GroupAction> {
    let group = parse_finite_group(&node.get("group")?)?;
    let module = parse_group(&node.get("module")?)?;
    let Some(maps) = node.opt("maps")? else {
        return Ok(GroupAction::trivial(group, module));
    };
    let n = module.generator_count();
    let matrices = maps.array()?.iter().map(|m| parse_matrix(m, n, n)).collect::<Result<Vec<_>>>()?;
    maps.at(GroupAction::new(group, module, matrices))
}

fn compute(input: Input, options: &Options) -> Result<Outcome> {
    match input {
        Input::Cech { complex, degrees } => cech_cohomology(&complex, degrees, options),
        Input::Bar { action, degrees } => bar_cohomology(&action, degrees, options),
        Input::Connecting { seq, cochain } => connecting(&seq, &cochain, options),
        Input::Les { seq, max_degree } => {
            let m = options.max_degree.or(max_degree).unwrap_or(seq.site().dim());
            let les = seq.long_exact_sequence(m)?;
            Ok(Outcome {
                verified: les.is_exact(),
                document: les_value(&les),
            })
        }
        Input::Tower(spec) => tower(&spec, options),
        Input::Spectral { filtered, r_max } => spectral(&filtered, r_max),
        Input::Gerbe { ext, transition } => gerbe(&ext, &transition, options),
    }
}

fn degree_range(degrees: &Degrees, default_top: usize, options: &Options) -> Vec<usize> {
    match degrees {
        Degrees::All => (0..=options.max_degree.unwrap_or(default_top)).collect(),
        Degrees::One(k) => vec![*k],
    }
}

fn cech_cohomology(complex: &CechComplex, degrees: Degrees, options: &Options) -> Result<Outcome> {
    let mut doc = Map::new();
    let dim = complex.site().dim();
    for p in degree_range(&degrees, dim, options) {
        doc.insert(format!("H{p}"), group_value(complex.cohomology(p)?.group()));
    }
    let mut verified = true;
    if options.verify {
        let mut computed: i64 = 0;
        for p in 0..=dim {
            let rank = complex.cohomology(p)?.group().free_rank() as i64;
            computed += if p % 2 == 0 { rank } else { -rank };
        }
        let expected = complex.coefficients().free_rank() as i64 * complex.site().euler_characteristic();
        verified = computed == expected;
        doc.insert(
            "verify".into(),
            json!({ "euler_characteristic": { "expected": expected, "computed": computed, "passed": verified } }),
        );
    }
    Ok(Outcome {
        document: Value::Object(doc),
        verified,
    })
}

fn bar_cohomology(action: &GroupAction, degrees: Degrees, options: &Options) -> Result<Outcome> {
    let range = degree_range(&degrees, DEFAULT_BAR_DEGREE, options);
    let top = *range.last().expect("nonempty range");
    let budget = options.budget.unwrap_or(DEFAULT_BAR_BUDGET);
    let complex = bar_complex(action, top, budget)?;
    let mut doc = Map::new();
    for &p in &range {
        doc.insert(format!("H{p}"), group_value(complex.cohomology(p)?.group()));
    }
    let mut verified = true;
    if options.verify {
        // H^0 is the fixed submodule, computed directly
        let m = action.module();
        let n = m.generator_count();
        let mut rows = Vec::new();
        for g in 0..action.group().order() {
            let a = action.map(g).matrix();
            for i in 0..n {
                rows.push((0..n).map(|j| &a[(i, j)] - i32::from(i == j)).collect());
            }
        }
        let stacked = Homomorphism::new(m.clone(), m.power(action.group().order()), IntMatrix::from_rows(rows, n))?;
        let fixed = stacked.invariants()?.kernel;
        let h0 = bar_complex(action, 0, budget)?.cohomology(0)?.group().clone();
        verified = fixed.is_isomorphic(&h0);
        doc.insert(
            "verify".into(),
            json!({ "fixed_submodule": { "expected": group_value(&fixed), "computed": group_value(&h0), "passed": verified } }),
        );
    }
    Ok(Outcome {
        document: Value::Object(doc),
        verified,
    })
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(VERIFY_SEED)
}

fn connecting(seq: &CechSequence, c: &Cochain, options: &Options) -> Result<Outcome> {
    let input_class = seq.over_c().class_of(c).map_err(|e| Error::At {
        path: "$.cochain".into(),
        source: Box::new(e),
    })?;
    let lift = seq.lift(c)?;
    let rep = seq.connecting_from_lift(&lift)?;
    let class = seq.over_a().class_of(&rep)?;
    let mut doc = json!({
        "input_class": class_value(&input_class),
        "lift": cochain_value(seq.over_b(), &lift),
        "representative": cochain_value(seq.over_a(), &rep),
        "class": class_value(&class),
    });
    let mut verified = true;
    if options.verify {
        let failures = seq.section_independence(c, VERIFY_TRIALS, &mut rng())?;
        let zero_to_zero = !input_class.is_zero() || class.is_zero();
        verified = failures == 0 && zero_to_zero;
        doc["verify"] = json!({
            "section_independence": { "trials": VERIFY_TRIALS, "failures": failures },
            "zero_class_maps_to_zero": zero_to_zero,
            "passed": verified,
        });
    }
    Ok(Outcome { document: doc, verified })
}

fn les_value(les: &LongExactSequence) -> Value {
    let labels: Vec<String> = les.terms.iter().map(|t| t.label()).collect();
    let terms: Vec<Value> = les
        .terms
        .iter()
        .zip(&labels)
        .map(|(t, l)| json!({ "label": l, "group": group_value(&t.group) }))
        .collect();
    let maps: Vec<Value> = les
        .maps
        .iter()
        .enumerate()
        .map(|(i, m)| json!({ "from": labels[i], "to": labels[i + 1], "matrix": matrix_value(m.matrix()) }))
        .collect();
    let positions: Vec<Value> = les
        .positions
        .iter()
        .map(|p| {
            let mut v = json!({ "term": labels[p.term], "exact": p.exact });
            if let Some(w) = &p.witness {
                v["witness"] = bigints_value(w);
            }
            v
        })
        .collect();
    json!({ "terms": terms, "maps": maps, "positions": positions, "exact": les.is_exact() })
}

fn tower(spec: &TowerSpec, options: &Options) -> Result<Outcome> {
    let classes = tower_classes(spec)?;
    let mut doc = tower_value(&classes);
    doc["trivial_from"] = json!(classes.trivial_from());
    let mut verified = true;
    if options.verify {
        let report = verify_tower(spec)?;
        verified = report.passed();
        let checks: Vec<Value> = report
            .checks
            .iter()
            .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
            .collect();
        doc["verify"] = json!({ "checks": checks, "passed": verified });
    }
    Ok(Outcome { document: doc, verified })
}

fn spectral(f: &FilteredComplex, r_max: usize) -> Result<Outcome> {
    let report = check_degeneration(f, r_max)?;
    let grid: Map<String, Value> = report
        .grid()
        .into_iter()
        .map(|(k, e)| {
            let v = json!({
                "Z": group_value(&e.terms.z),
                "B": group_value(&e.terms.b),
                "E": group_value(&e.terms.e),
                "expected": group_value(&e.expected),
                "passed": e.passed(),
            });
            (k, v)
        })
        .collect();
    let infinity: Map<String, Value> = report
        .infinity
        .iter()
        .map(|e| {
            let v = json!({ "E": group_value(&e.e), "expected": group_value(&e.expected) });
            (format!("{}/{}", e.p, e.q), v)
        })
        .collect();
    let mut verified = report.passed();
    let mut doc = json!({
        "grid": grid,
        "E_infinity": infinity,
        "page_stable": report.page_stable,
        "tail_vanishes": report.tail_vanishes,
        "passed": report.passed(),
    });
    let s = f.len();
    let summands = f.summands();
    if s >= 2 && summands[1..s - 1].iter().all(FgAbGroup::is_trivial) {
        let dim = f.site().dim();
        let r = les_direct_sum(f.site(), &summands[0], &summands[s - 1], s, dim)?;
        verified &= r.passed();
        let mut les = les_value(&r.les);
        les["reading"] = json!(r.header);
        les["n"] = json!(r.index);
        les["connecting_zero"] = json!(r.connecting_zero);
        les["splits"] = json!(r.splits);
        doc["direct_sum_les"] = les;
    }
    Ok(Outcome { document: doc, verified })
}

fn gerbe(ext: &CentralExtension, t: &TransitionCocycle, options: &Options) -> Result<Outcome> {
    let site: &SimplicialComplex = t.site();
    let o = lifting_obstruction(t, ext)?;
    let search = brute_force_lift(t, ext, options.budget.unwrap_or(DEFAULT_LIFT_BUDGET))?;
    let section: BTreeMap<String, usize> = ext
        .canonical_section()
        .iter()
        .enumerate()
        .map(|(q, &g)| (q.to_string(), g))
        .collect();
    let mut doc = json!({
        "band": group_value(ext.band()),
        "section": section,
        "obstruction": cochain_value(&o.complex, &o.cochain),
        "class": class_value(&o.class),
        "lift": search.lift.as_ref().map(|l| edge_values(site, l)),
        "states_searched": u64::try_from(search.states_searched).map_or_else(|_| json!(search.states_searched.to_string()), |n| json!(n)),
    });
    let mut verified = true;
    if options.verify {
        let failures = section_independence(t, ext, VERIFY_TRIALS, &mut rng())?;
        let agreement = o.is_zero() == search.lift.is_some();
        verified = failures == 0 && agreement;
        doc["verify"] = json!({
            "section_independence": { "trials": VERIFY_TRIALS, "failures": failures },
            "oracle_agreement": agreement,
            "passed": verified,
        });
    }
    Ok(Outcome { document: doc, verified })
}
