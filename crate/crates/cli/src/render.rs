//! Markdown rendering and byte-stable JSON.

use serde_json::Value;

use origami::analysis::{Analysis, OracleStatus};
use origami::families::DiffRow;
use origami::isotypic::Check;
use origami::lyapunov::SpectrumReport;
use origami::report::{markdown_table, sig12};
use origami::search::Probe;

/// Rounds every float to 12 significant digits. Object keys are already
/// sorted because `serde_json` maps are ordered.
pub fn stabilize(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = sig12(n.as_f64().expect("f64"));
            if let Some(m) = serde_json::Number::from_f64(x) {
                *n = m;
            }
        }
        Value::Array(xs) => xs.iter_mut().for_each(stabilize),
        Value::Object(m) => m.values_mut().for_each(stabilize),
        _ => {}
    }
}

fn num(x: f64) -> String {
    format!("{}", sig12(x))
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

/// `[2, 2, 2, 1]` as `2^3, 1`.
fn compact_multiset(xs: &[usize]) -> String {
    let mut parts: Vec<(usize, usize)> = Vec::new();
    for &x in xs {
        match parts.last_mut() {
            Some((v, k)) if *v == x => *k += 1,
            _ => parts.push((x, 1)),
        }
    }
    let parts: Vec<String> =
        parts.iter().map(|&(v, k)| if k == 1 { v.to_string() } else { format!("{v}^{k}") }).collect();
    parts.join(", ")
}

fn checks_table(checks: &[&Check]) -> String {
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|c| vec![c.name.to_string(), if c.passed { "pass" } else { "FAIL" }.into(), c.detail.clone()])
        .collect();
    markdown_table(&["check", "result", "detail"], &rows)
}

pub fn analysis(
    family: &Option<String>,
    hash: &str,
    notes: &[String],
    family_checks: &[Check],
    diff: &[DiffRow],
    a: &Analysis,
    passed: bool,
) -> String {
    let mut s = String::new();
    match family {
        Some(name) => s.push_str(&format!("# Family {name}\n\n")),
        None => s.push_str("# Origami analysis\n\n"),
    }
    s.push_str(&format!("input sha256: `{hash}`\n\n"));
    for n in notes {
        s.push_str(&format!("- {n}\n"));
    }
    if !notes.is_empty() {
        s.push('\n');
    }

    let o = &a.origami;
    let stratum = compact_multiset(&o.stratum);
    s.push_str("## Surface\n\n");
    s.push_str(&markdown_table(
        &["squares", "genus", "stratum", "#Σ*", "regular", "quasiregular", "convention", "#G", "#H", "[G:N]"],
        &[vec![
            o.n_squares.to_string(),
            o.genus.to_string(),
            format!("({stratum})"),
            o.sigma_star_count.to_string(),
            yes(o.regular),
            yes(o.quasiregular),
            o.convention.to_string(),
            o.group_order.to_string(),
            o.subgroup_order.to_string(),
            o.normalizer_index.to_string(),
        ]],
    ));
    let g = &a.automorphisms;
    s.push_str("\n## Automorphism group\n\n");
    s.push_str(&markdown_table(
        &["order", "abelian", "classes", "exponent", "ord(c)", "real", "quaternionic", "complex"],
        &[vec![
            g.order.to_string(),
            yes(g.abelian),
            g.classes.to_string(),
            g.exponent.to_string(),
            a.invariants.order_c.to_string(),
            g.real.to_string(),
            g.quaternionic.to_string(),
            g.complex.to_string(),
        ]],
    ));
    s.push_str("\n## Multiplicities\n\n");
    s.push_str(&a.report.to_markdown());

    if !diff.is_empty() {
        s.push_str("\n## Expected against computed\n\n");
        let rows: Vec<Vec<String>> = diff
            .iter()
            .map(|d| {
                vec![
                    d.field.clone(),
                    d.expected.clone(),
                    d.computed.clone(),
                    if d.matches { "ok" } else { "MISMATCH" }.into(),
                ]
            })
            .collect();
        s.push_str(&markdown_table(&["field", "expected", "computed", ""], &rows));
    }

    s.push_str("\n## Checks\n\n");
    let all: Vec<&Check> =
        family_checks.iter().chain(&a.checks).chain(a.homology.iter().flat_map(|h| h.checks.iter())).collect();
    s.push_str(&checks_table(&all));

    s.push_str("\n## Homology oracle\n\n");
    match &a.oracle {
        OracleStatus::Passed => s.push_str("passed\n"),
        OracleStatus::Failed { failures } => s.push_str(&format!("FAILED: {}\n", failures.join("; "))),
        OracleStatus::Skipped { reason } => s.push_str(&format!("skipped: {reason}\n")),
    }
    if let Some(h) = &a.homology {
        s.push_str(&format!(
            "\nrank H₁ = {}, betti {:?}, dim H₁(M,Σ*) = {}, reduced = {}\n",
            h.rank,
            h.betti,
            h.relative_dim,
            yes(h.reduced)
        ));
        if let Some(p) = &h.projectors {
            s.push('\n');
            let rows: Vec<Vec<String>> = p
                .irreducibles
                .iter()
                .map(|r| {
                    vec![r.label.clone(), r.expected.to_string(), r.trace_rank.to_string(), r.numeric_rank.to_string()]
                })
                .collect();
            s.push_str(&markdown_table(&["α", "ℓ·dim", "exact trace", "numeric rank"], &rows));
        }
        if !h.affine.is_empty() {
            s.push('\n');
            let rows: Vec<Vec<String>> = h
                .affine
                .iter()
                .map(|x| {
                    vec![
                        format!("{}^{}", x.shear, x.power),
                        x.variant_count.to_string(),
                        yes(x.classification.in_aff_star),
                        yes(x.classification.in_aff_star_star),
                        yes(x.classification.projectors_intertwined),
                    ]
                })
                .collect();
            s.push_str(&markdown_table(
                &["element", "relabelings", "Aff_*", "Aff_**", "components intertwined"],
                &rows,
            ));
        }
    }
    s.push_str(&format!("\n**{}**\n", if passed { "all checks passed" } else { "FAILED" }));
    s
}

pub fn homology(hash: &str, rank: usize, genus: usize, intersection: &[Vec<i64>], shears: &[(String, i64)]) -> String {
    let mut s = format!("# Homology\n\ninput sha256: `{hash}`\n\nrank {rank}, genus {genus}\n\n");
    for (name, k) in shears {
        s.push_str(&format!("- minimal power of {name}: {k}\n"));
    }
    s.push_str("\nIntersection matrix:\n\n```\n");
    for row in intersection {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>2}")).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s.push_str("```\n");
    s
}

pub fn lyapunov(hash: &str, r: &SpectrumReport) -> String {
    let mut s = format!("# Lyapunov spectrum\n\ninput sha256: `{hash}`\n\n");
    s.push_str(&format!(
        "rng: {}; seed {}, {} steps, {} batches, {} replicas\n\n",
        r.rng, r.config.seed, r.config.steps, r.config.batches, r.config.replicas
    ));
    let gens: Vec<String> = r.generators.iter().map(|g| g.name.clone()).collect();
    s.push_str(&format!(
        "generators: {} ({})\n\ntop tautological rate {} ± {}\n\n_{}_\n\n",
        gens.join(", "),
        if r.aff_star_star { "all in Aff_**" } else { "Aff_* only, divisibility not asserted" },
        num(r.top_rate),
        num(r.top_rate_stderr),
        r.scope
    ));
    let rows: Vec<Vec<String>> = r
        .blocks
        .iter()
        .map(|b| {
            let ex: Vec<String> = b.exponents.iter().map(|x| num(*x)).collect();
            vec![
                b.label.clone(),
                b.kind.clone(),
                b.dim_w.to_string(),
                b.dim_real_irrep.map_or("-".into(), |d| d.to_string()),
                format!("{:?}", b.clusters),
                format!("{:?}", b.divisibility),
                yes(b.symmetric),
                ex.join(", "),
            ]
        })
        .collect();
    s.push_str(&markdown_table(
        &["block", "type", "dim W", "dim_R V", "clusters", "divisibility", "symmetric", "θ"],
        &rows,
    ));
    s.push_str(&format!("\nblocks agree with whole space: {}\n", yes(r.blocks_match_whole)));
    s
}

pub fn search(probes: &[Probe], errors: &[String]) -> String {
    let mut s = String::from("# Search for nontrivial isotypic permutations\n\n");
    let rows: Vec<Vec<String>> = probes
        .iter()
        .map(|p| {
            let moved: Vec<String> = p.moved.iter().map(|(a, b)| format!("{a} → {b}")).collect();
            vec![
                p.name.clone(),
                p.gamma_order.to_string(),
                format!("{}^{}", p.shear, p.power),
                if moved.is_empty() { "none".into() } else { moved.join(", ") },
            ]
        })
        .collect();
    s.push_str(&markdown_table(&["origami", "#Aut", "element", "moved components"], &rows));
    let found = probes.iter().filter(|p| !p.moved.is_empty()).count();
    s.push_str(&format!("\n{found} of {} probes move a nonzero real component\n", probes.len()));
    for e in errors {
        s.push_str(&format!("- skipped {e}\n"));
    }
    s
}
