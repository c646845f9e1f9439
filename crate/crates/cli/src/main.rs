use std::fmt::Write as _;
use std::io::Read;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use lefschetz::burnside::TableOfMarks;
use lefschetz::decomposition::{dual_path_mismatches, lefschetz, Decomposition, Recipe, SubgroupCollection};
use lefschetz::exactnum::rational;
use lefschetz::induction::{
    canonicity_check, formula, mackey_restrict_formula, sub_lattice, verify_character, verify_idempotent_support, wedge_report, InductionFormula,
    RingSpec,
};
use lefschetz::permgroup::{is_prime, named_group, PermGroup, Subgroup, SubgroupLattice, DEFAULT_ORDER_CAP};
use serde_json::{json, Value};

/// Explicit rational induction formulae for finite permutation groups.
#[derive(Parser)]
#[command(name = "lefschetz", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Order, generators and element classes.
    Group(Common),
    /// Conjugacy classes of subgroups in canonical order.
    Subgroups(Common),
    /// The table of marks, rows and columns in canonical class order.
    Marks(Common),
    /// The Lefschetz invariant of a decomposition in the Burnside ring.
    Lefschetz {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        coll: Collection,
    },
    /// The induction formula of a collection.
    Formula {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        coll: Collection,
        /// Check the formula against character values and marks.
        #[arg(long)]
        verify: bool,
    },
    /// Runs every oracle on a computed formula or one read from --formula.
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        coll: Collection,
        /// Formula JSON as printed by `formula --json` (`-` for stdin).
        #[arg(long)]
        formula: Option<String>,
    },
    /// Restricts a formula to a subgroup.
    Restrict {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        coll: Collection,
        /// The subgroup, as a group spec on the same points.
        #[arg(long)]
        to: String,
        /// Formula JSON as printed by `formula --json` (`-` for stdin).
        #[arg(long)]
        formula: Option<String>,
    },
    /// Compares the restricted formula with the one computed over the subgroup.
    Canonicity {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        coll: Collection,
        /// The subgroup, as a group spec on the same points.
        #[arg(long)]
        to: String,
    },
    /// The formal wedge decomposition at a prime from a centralizer formula.
    Wedge {
        #[command(flatten)]
        common: Common,
        /// Collection recipe; defaults to the centralizers of the primordial subgroups at the prime.
        #[arg(long)]
        collection: Option<String>,
        #[arg(long)]
        prime: u64,
    },
}

#[derive(Args)]
struct Common {
    /// S<n>, A<n>, C<n>, D<2n>, Q8, V4 or perm:<degree>:<cycles>;<cycles>;...
    #[arg(long)]
    group: String,
    /// Largest group order that will be enumerated.
    #[arg(long, env = "BURNSIDE_ORDER_CAP", default_value_t = DEFAULT_ORDER_CAP)]
    order_cap: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Collection {
    /// all, cyclic, primordial:p,q, centralizers-of:<c>, subgroup-closure:<c> or a JSON list of generator lists.
    #[arg(long, default_value = "cyclic")]
    collection: String,
    #[arg(long, default_value = "subgroup", value_parser = parse_decomposition)]
    decomposition: Decomposition,
    /// Primes not invertible in the coefficient ring: none, all or p,q.
    #[arg(long, default_value = "none", value_parser = parse_ring)]
    ring_primes: RingSpec,
}

fn parse_decomposition(s: &str) -> Result<Decomposition, String> {
    s.parse()
}

fn parse_ring(s: &str) -> Result<RingSpec, String> {
    s.parse().map_err(|e: lefschetz::induction::InductionError| e.to_string())
}

/// What a verb produced: JSON and the same data as text, plus whether a check failed.
struct Report {
    json: Value,
    text: String,
    failed: bool,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, failed: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = match &cli.verb {
        Verb::Group(c) | Verb::Subgroups(c) | Verb::Marks(c) => c.json,
        Verb::Lefschetz { common, .. }
        | Verb::Formula { common, .. }
        | Verb::Verify { common, .. }
        | Verb::Restrict { common, .. }
        | Verb::Canonicity { common, .. }
        | Verb::Wedge { common, .. } => common.json,
    };
    match run(&cli.verb) {
        Ok(r) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&r.json).expect("serializable"));
            } else {
                print!("{}", r.text);
            }
            if r.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(verb: &Verb) -> Result<Report, String> {
    match verb {
        Verb::Group(c) => cmd_group(c),
        Verb::Subgroups(c) => cmd_subgroups(c),
        Verb::Marks(c) => cmd_marks(c),
        Verb::Lefschetz { common, coll } => cmd_lefschetz(common, coll),
        Verb::Formula { common, coll, verify } => cmd_formula(common, coll, *verify),
        Verb::Verify { common, coll, formula } => cmd_verify(common, coll, formula.as_deref()),
        Verb::Restrict { common, coll, to, formula } => cmd_restrict(common, coll, to, formula.as_deref()),
        Verb::Canonicity { common, coll, to } => cmd_canonicity(common, coll, to),
        Verb::Wedge { common, collection, prime } => cmd_wedge(common, collection.as_deref(), *prime),
    }
}

fn load_group(c: &Common) -> Result<Arc<SubgroupLattice>, String> {
    let g = named_group(&c.group, c.order_cap).map_err(|e| e.to_string())?;
    Ok(Arc::new(SubgroupLattice::new(Arc::new(g))))
}

fn build_collection(lat: &Arc<SubgroupLattice>, spec: &str) -> Result<SubgroupCollection, String> {
    let recipe = Recipe::parse(spec, lat.group().degree()).map_err(|e| e.to_string())?;
    let (e, added) = recipe.build(lat).map_err(|e| e.to_string())?;
    if added {
        eprintln!("warning: collection `{spec}` was not conjugation-closed; conjugates were added");
    }
    Ok(e)
}

/// The subgroup of `g` generated by the generators of the group spec `spec`.
fn subgroup_from_spec(g: &Arc<PermGroup>, spec: &str, cap: usize) -> Result<Subgroup, String> {
    let k = named_group(spec, cap).map_err(|e| e.to_string())?;
    if k.degree() != g.degree() {
        return Err(format!("`{spec}` acts on {} points, the group on {}", k.degree(), g.degree()));
    }
    let idx = k
        .generators()
        .iter()
        .map(|p| g.index_of(p).ok_or_else(|| format!("`{spec}` is not a subgroup of the group")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Subgroup::generated(g, &idx))
}

fn read_formula(path: &str, lat: &Arc<SubgroupLattice>) -> Result<InductionFormula, String> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|e| e.to_string())?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    }
    let v: Value = serde_json::from_str(&text).map_err(|e| format!("{path}: {e}"))?;
    InductionFormula::from_json(&v, lat).map_err(|e| e.to_string())
}

fn class_json(lat: &SubgroupLattice, c: usize) -> Value {
    let rep = lat.class_rep(c);
    let g = lat.group();
    json!({
        "index": c,
        "generators": rep.generators().iter().map(|&x| g.element(x).to_string()).collect::<Vec<_>>(),
        "order": rep.order(),
        "class_size": lat.class(c).size(),
        "normalizer_order": lat.class(c).normalizer_order,
        "cyclic": rep.is_cyclic(),
    })
}

fn cmd_group(c: &Common) -> Result<Report, String> {
    let lat = load_group(c)?;
    let g = lat.group();
    let classes = g.element_classes();
    let mut text = String::new();
    let _ = writeln!(text, "group: {}", c.group);
    let _ = writeln!(text, "degree: {}", g.degree());
    let _ = writeln!(text, "order: {}", g.order());
    let gens: Vec<String> = g.generators().iter().map(|p| p.to_string()).collect();
    let _ = writeln!(text, "generators: {}", gens.join(", "));
    let _ = writeln!(text, "subgroup classes: {}", lat.classes().len());
    let _ = writeln!(text, "element classes ({}):", classes.len());
    for (x, size) in &classes {
        let _ = writeln!(text, "  {}  order {}  size {}", g.element(*x), g.element_order(*x), size);
    }
    let json = json!({
        "group": c.group,
        "degree": g.degree(),
        "order": g.order(),
        "generators": gens,
        "subgroup_classes": lat.classes().len(),
        "element_classes": classes.iter().map(|(x, size)| json!({
            "representative": g.element(*x).to_string(),
            "order": g.element_order(*x),
            "size": size,
        })).collect::<Vec<_>>(),
    });
    Ok(Report::ok(json, text))
}

fn cmd_subgroups(c: &Common) -> Result<Report, String> {
    let lat = load_group(c)?;
    let mut text = format!("{} subgroups in {} classes\n", lat.subgroups().len(), lat.classes().len());
    for i in 0..lat.classes().len() {
        let rep = lat.class_rep(i);
        let cls = lat.class(i);
        let _ = writeln!(
            text,
            "[{i}] {}  order {}  class size {}  normalizer order {}{}",
            rep.label(),
            rep.order(),
            cls.size(),
            cls.normalizer_order,
            if rep.is_cyclic() { "  cyclic" } else { "" }
        );
    }
    let json = json!({
        "group": c.group,
        "subgroup_count": lat.subgroups().len(),
        "classes": (0..lat.classes().len()).map(|i| class_json(&lat, i)).collect::<Vec<_>>(),
    });
    Ok(Report::ok(json, text))
}

fn cmd_marks(c: &Common) -> Result<Report, String> {
    let lat = load_group(c)?;
    let tom = TableOfMarks::new(lat.clone());
    let mut text = String::from("classes:\n");
    for i in 0..tom.len() {
        let rep = lat.class_rep(i);
        let _ = writeln!(text, "  [{i}] {} order {}", rep.label(), rep.order());
    }
    let _ = writeln!(text, "marks (row H, column K: fixed points of K on G/H):");
    for row in tom.rows() {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        let _ = writeln!(text, "  [{}]", cells.join(", "));
    }
    let json = json!({
        "group": c.group,
        "classes": (0..tom.len()).map(|i| class_json(&lat, i)).collect::<Vec<_>>(),
        "marks": tom.rows(),
    });
    Ok(Report::ok(json, text))
}

fn collection_text(e: &SubgroupCollection) -> String {
    let lat = e.lattice();
    let labels: Vec<String> = e.classes().iter().map(|&c| format!("{} (x{})", lat.class_rep(c).label(), lat.class(c).size())).collect();
    format!("collection: {} subgroups in {} classes: {}\n", e.len(), e.classes().len(), labels.join(", "))
}

fn collection_json(e: &SubgroupCollection) -> Value {
    json!(e.classes().iter().map(|&c| class_json(e.lattice(), c)).collect::<Vec<_>>())
}

fn cmd_lefschetz(c: &Common, coll: &Collection) -> Result<Report, String> {
    let lat = load_group(c)?;
    let e = build_collection(&lat, &coll.collection)?;
    let x = lefschetz(&e, coll.decomposition);
    let tom = TableOfMarks::new(lat.clone());
    let marks = tom.marks_of(&x).map_err(|e| e.to_string())?;
    let marks: Vec<String> = marks.iter().map(rational::to_string).collect();
    let mut text = collection_text(&e);
    let _ = writeln!(text, "decomposition: {}", coll.decomposition);
    let _ = writeln!(text, "invariant: {x}");
    let _ = writeln!(text, "marks: [{}]", marks.join(", "));
    let json = json!({
        "group": c.group,
        "decomposition": coll.decomposition.to_string(),
        "collection": collection_json(&e),
        "invariant": x.to_json(),
        "marks": marks,
    });
    Ok(Report::ok(json, text))
}

fn formula_text(f: &InductionFormula, group_spec: &str, verified: Option<bool>) -> String {
    let lat = f.lattice();
    let mut text = String::new();
    let _ = writeln!(text, "group: {group_spec}");
    let _ = writeln!(text, "decomposition: {}", f.decomposition);
    let _ = writeln!(text, "ring primes: {}", f.ring);
    let _ = writeln!(text, "{f}");
    for (c, v) in f.terms() {
        let rep = lat.class_rep(*c);
        let _ = writeln!(text, "  {}  order {}  class size {}  coefficient {}", rep.label(), rep.order(), lat.class(*c).size(), rational::to_string(v));
    }
    let show = |b: Option<bool>| b.map_or("unknown".to_string(), |b| b.to_string());
    let _ = writeln!(text, "verified: {}", show(verified));
    let _ = writeln!(text, "hypothesis ok: {}", show(f.hypothesis_ok));
    text
}

/// Character oracle, plus the mark and dual-path checks when the collection is known.
fn run_oracles(f: &InductionFormula) -> (bool, Value, String) {
    let g = f.group();
    let ch = verify_character(f);
    let mut text = format!("character check: {}\n", if ch.ok { "pass" } else { "FAIL" });
    for (x, r) in ch.residuals.iter().filter(|(_, r)| *r != rational::int(0)) {
        let _ = writeln!(text, "  residual at {}: {}", g.element(*x), rational::to_string(r));
    }
    let mut json = json!({
        "character": {
            "ok": ch.ok,
            "residuals": ch.residuals.iter().map(|(x, r)| json!({"element": g.element(*x).to_string(), "residual": rational::to_string(r)})).collect::<Vec<_>>(),
        },
    });
    let mut ok = ch.ok;
    if let Some(e) = &f.collection {
        let lat = f.lattice();
        let tom = TableOfMarks::new(lat.clone());
        let support = verify_idempotent_support(&tom, e, f.decomposition);
        let dual = dual_path_mismatches(&tom, e, f.decomposition);
        let labels = |cs: &[usize]| cs.iter().map(|&c| lat.class_rep(c).label()).collect::<Vec<_>>();
        let _ = writeln!(text, "mark support check: {} ({} classes checked)", if support.ok { "pass" } else { "FAIL" }, support.checked.len());
        for l in labels(&support.failing) {
            let _ = writeln!(text, "  mark is not 1 at {l}");
        }
        let _ = writeln!(text, "fixed-point check: {}", if dual.is_empty() { "pass" } else { "FAIL" });
        for l in labels(&dual) {
            let _ = writeln!(text, "  mark differs from the fixed-point Euler characteristic at {l}");
        }
        json["support"] = json!({"ok": support.ok, "checked": labels(&support.checked), "failing": labels(&support.failing)});
        json["fixed_points"] = json!({"ok": dual.is_empty(), "failing": labels(&dual)});
        ok &= support.ok && dual.is_empty();
    }
    (ok, json, text)
}

fn cmd_formula(c: &Common, coll: &Collection, verify: bool) -> Result<Report, String> {
    let lat = load_group(c)?;
    let e = build_collection(&lat, &coll.collection)?;
    let f = formula(&e, coll.decomposition, &coll.ring_primes);
    let mut text = collection_text(&e);
    let (verified, failed) = if verify {
        let (ok, _, t) = run_oracles(&f);
        text.push_str(&t);
        (Some(ok), !ok)
    } else {
        (None, false)
    };
    text.push_str(&formula_text(&f, &c.group, verified));
    let mut json = f.to_json(&c.group, verified);
    json["collection"] = collection_json(&e);
    Ok(Report { json, text, failed })
}

fn cmd_verify(c: &Common, coll: &Collection, path: Option<&str>) -> Result<Report, String> {
    let lat = load_group(c)?;
    let f = match path {
        Some(p) => read_formula(p, &lat)?,
        None => formula(&build_collection(&lat, &coll.collection)?, coll.decomposition, &coll.ring_primes),
    };
    let (ok, checks, mut text) = run_oracles(&f);
    text.push_str(&formula_text(&f, &c.group, Some(ok)));
    let mut json = f.to_json(&c.group, Some(ok));
    json["checks"] = checks;
    Ok(Report { json, text, failed: !ok })
}

fn cmd_restrict(c: &Common, coll: &Collection, to: &str, path: Option<&str>) -> Result<Report, String> {
    let lat = load_group(c)?;
    let k = subgroup_from_spec(lat.group(), to, c.order_cap)?;
    let f = match path {
        Some(p) => read_formula(p, &lat)?,
        None => formula(&build_collection(&lat, &coll.collection)?, coll.decomposition, &coll.ring_primes),
    };
    let kl = sub_lattice(&k);
    let r = mackey_restrict_formula(&f, &k, &kl).map_err(|e| e.to_string())?;
    let ok = verify_character(&r).ok;
    let text = formula_text(&r, to, Some(ok));
    Ok(Report { json: r.to_json(to, Some(ok)), text, failed: !ok })
}

fn cmd_canonicity(c: &Common, coll: &Collection, to: &str) -> Result<Report, String> {
    let lat = load_group(c)?;
    let k = subgroup_from_spec(lat.group(), to, c.order_cap)?;
    let recipe = Recipe::parse(&coll.collection, lat.group().degree()).map_err(|e| e.to_string())?;
    let rep = canonicity_check(&lat, &recipe, coll.decomposition, &coll.ring_primes, &k).map_err(|e| e.to_string())?;
    let mut text = format!("canonical: {}\nrestricted from {}:\n", rep.canonical, c.group);
    text.push_str(&rep.restricted.to_string());
    let _ = writeln!(text, "\ncomputed over {to}:");
    text.push_str(&rep.direct.to_string());
    text.push('\n');
    let json = json!({
        "group": c.group,
        "subgroup": to,
        "collection": coll.collection,
        "canonical": rep.canonical,
        "restricted": rep.restricted.to_json(to, None),
        "direct": rep.direct.to_json(to, None),
    });
    Ok(Report::ok(json, text))
}

fn cmd_wedge(c: &Common, collection: Option<&str>, p: u64) -> Result<Report, String> {
    if !is_prime(p) {
        return Err(format!("{p} is not prime"));
    }
    let lat = load_group(c)?;
    let collection = collection.map_or_else(|| format!("centralizers-of:primordial:{p}"), str::to_string);
    let e = build_collection(&lat, &collection)?;
    let f = formula(&e, Decomposition::Centralizer, &RingSpec::primes(&[p]));
    let w = wedge_report(&f, p).map_err(|e| e.to_string())?;
    let json = w.to_json(&f, &c.group);
    let mut text = format!("group: {}\nprime: {p}\nhypothesis ok: {}\nformal stable wedge summands:\n", c.group, w.hypothesis_ok);
    for (cls, v) in &w.terms {
        let rep = lat.class_rep(*cls);
        let _ = writeln!(text, "  {}  B{} order {}", rational::to_string(v), rep.label(), rep.order());
    }
    Ok(Report::ok(json, text))
}
