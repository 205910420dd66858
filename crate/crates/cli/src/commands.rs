use std::path::Path;

use lincolor::colorings::{chi_cen_exact, chi_lin_exact, find_noncentered_path, verify_centered};
use lincolor::generators::{
    gen_complete_binary_tree, gen_recursive_clique, random_interval, random_tree,
    striped_btree_coloring,
};
use lincolor::interval::centered_from_linear;
use lincolor::io::{
    parse_intervals, to_dot, write_edge_list, write_intervals, Bundle, ColoringDoc,
    DecompositionDoc,
};
use lincolor::ranking::schaffer_rank_traced;
use lincolor::sat::{
    build_gadget, parse_dimacs, path_to_assignment, preprocess, CnfFormula, Status, COLOR_OFFSET,
};
use lincolor::treedepth::treedepth_exact;
use lincolor::{Coloring, Error, Graph, Verdict};
use serde_json::{json, Value};

use crate::input::{self, Format};
use crate::{Ctx, Failure, Family, Measure, Mode, Outcome};

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<(), Failure> {
    let path = dir.join(name);
    std::fs::write(&path, contents)
        .map_err(|e| Failure::Invalid(format!("cannot write {}: {e}", path.display())))
}

fn emit_files(
    dir: &Path,
    g: &Graph,
    c: Option<&Coloring>,
    metadata: &Value,
) -> Result<(), Failure> {
    std::fs::create_dir_all(dir)
        .map_err(|e| Failure::Invalid(format!("cannot create {}: {e}", dir.display())))?;
    write_file(dir, "graph.el", &write_edge_list(g))?;
    if let Some(c) = c {
        write_file(
            dir,
            "coloring.json",
            &(serde_json::to_string(&ColoringDoc::from_coloring(c)).unwrap() + "\n"),
        )?;
    }
    write_file(
        dir,
        "metadata.json",
        &(serde_json::to_string(metadata).unwrap() + "\n"),
    )
}

fn bundle(g: &Graph, c: Option<&Coloring>, metadata: Value) -> Bundle {
    let mut b = Bundle::new(g, c);
    b.metadata = Some(metadata);
    b
}

pub fn gen(ctx: &mut Ctx, family: &Family, files: Option<&Path>) -> Result<Outcome, Failure> {
    let (g, c, metadata, intervals) = match *family {
        Family::Rclique { i } => {
            let inst = gen_recursive_clique(i)?;
            (
                inst.graph,
                Some(inst.coloring),
                serde_json::to_value(&inst.metadata).unwrap(),
                None,
            )
        }
        Family::Btree {
            levels,
            stripe_a: Some(a),
        } => {
            if a == 0 || levels % a != 0 {
                return Err(Failure::Invalid(format!(
                    "--levels {levels} is not a positive multiple of --stripe-a {a}"
                )));
            }
            let inst = striped_btree_coloring(a, levels / a)?;
            (
                inst.graph,
                Some(inst.coloring),
                serde_json::to_value(&inst.metadata).unwrap(),
                None,
            )
        }
        Family::Btree {
            levels,
            stripe_a: None,
        } => {
            let g = gen_complete_binary_tree(levels)?;
            (
                g,
                None,
                json!({"family": "btree", "params": {"levels": levels}}),
                None,
            )
        }
        Family::RandomTree { n } => {
            let g = random_tree(n, ctx.seed)?;
            (
                g,
                None,
                json!({"family": "random-tree", "params": {"n": n, "seed": ctx.seed}}),
                None,
            )
        }
        Family::RandomInterval { n, span } => {
            let span = span.unwrap_or(2 * n as u32);
            let (g, rep) = random_interval(n, span, ctx.seed)?;
            let meta = json!({
                "family": "random-interval",
                "params": {"n": n, "seed": ctx.seed, "span": span},
                "intervals": rep.intervals(),
            });
            (g, None, meta, Some(write_intervals(&rep)))
        }
    };
    if let Some(dir) = files {
        emit_files(dir, &g, c.as_ref(), &metadata)?;
        if let Some(text) = &intervals {
            write_file(dir, "intervals.txt", text)?;
        }
    }
    let mut out = Outcome::new(&bundle(&g, c.as_ref(), metadata), true)
        .stat("n", g.n())
        .stat("m", g.m());
    if let Some(c) = &c {
        out = out.stat("colors", c.size());
    }
    Ok(out)
}

pub fn verify(
    ctx: &mut Ctx,
    graph: Option<&Path>,
    coloring: Option<&Path>,
    mode: Mode,
) -> Result<Outcome, Failure> {
    let loaded = input::load(&mut ctx.inputs, graph, coloring)?;
    let (g, c) = (&loaded.graph, input::require_coloring(&loaded)?);
    let (witness, nodes) = match mode {
        Mode::Linear => {
            let s = find_noncentered_path(g, c, &ctx.budget)?;
            (s.path.map(lincolor::Witness::Path), Some(s.nodes))
        }
        Mode::Centered => match verify_centered(g, c)? {
            Verdict::Ok => (None, None),
            Verdict::Violated(w) => (Some(w), None),
        },
    };
    let mode_name = match mode {
        Mode::Linear => "linear",
        Mode::Centered => "centered",
    };
    let doc = json!({
        "mode": mode_name,
        "verdict": if witness.is_none() { "ok" } else { "violated" },
        "n": g.n(),
        "colors": c.size(),
        "witness": witness,
    });
    let mut out = Outcome::new(&doc, witness.is_none())
        .stat("n", g.n())
        .stat("colors", c.size());
    if let Some(nodes) = nodes {
        out = out.stat("nodes", nodes);
    }
    Ok(out)
}

pub fn exact(ctx: &mut Ctx, graph: Option<&Path>, measure: Measure) -> Result<Outcome, Failure> {
    let g = input::load(&mut ctx.inputs, graph, None)?.graph;
    let doc = match measure {
        Measure::Treedepth => {
            let (td, t) = treedepth_exact(&g, &ctx.budget)?;
            let c = lincolor::treedepth::canonical_coloring(&g, &t)?;
            json!({
                "measure": "treedepth",
                "value": td,
                "decomposition": DecompositionDoc::from_decomposition(&t),
                "coloring": ColoringDoc::from_coloring(&c),
            })
        }
        Measure::ChiLin | Measure::ChiCen => {
            let (name, (k, c)) = if measure == Measure::ChiLin {
                ("chi-lin", chi_lin_exact(&g, &ctx.budget)?)
            } else {
                ("chi-cen", chi_cen_exact(&g, &ctx.budget)?)
            };
            json!({"measure": name, "value": k, "coloring": ColoringDoc::from_coloring(&c)})
        }
    };
    let value = doc["value"].clone();
    Ok(Outcome::new(&doc, true)
        .stat("n", g.n())
        .stat("colors", value))
}

pub fn rank(
    ctx: &mut Ctx,
    graph: Option<&Path>,
    root: Option<usize>,
    trace: bool,
) -> Result<Outcome, Failure> {
    let g = input::load(&mut ctx.inputs, graph, None)?.graph;
    let (r, steps) = schaffer_rank_traced(&g, root)?;
    let mut doc = json!({
        "root": r.root,
        "size": r.size(),
        "rank": r.rank,
        "lists": r.lists,
    });
    if trace {
        doc["trace"] = serde_json::to_value(&steps).unwrap();
    }
    Ok(Outcome::new(&doc, true)
        .stat("n", g.n())
        .stat("depth", r.size()))
}

pub fn decompose(ctx: &mut Ctx, intervals: &Path, coloring: &Path) -> Result<Outcome, Failure> {
    let text = ctx.inputs.read(Some(intervals))?;
    let rep = parse_intervals(&text)?;
    let psi = input::read_coloring(&mut ctx.inputs, coloring)?;
    let g = rep.to_graph();
    if psi.n() != g.n() {
        return Err(Failure::Invalid(format!(
            "coloring has {} entries for {} intervals",
            psi.n(),
            g.n()
        )));
    }
    match centered_from_linear(&g, &rep, &psi) {
        Ok(out) => {
            let doc = json!({
                "decomposition": DecompositionDoc::from_decomposition(&out.decomposition),
                "coloring": ColoringDoc::from_coloring(&out.coloring),
                "k": out.k,
                "depth": out.depth,
                "bound": out.bound,
                "fallback_used": out.fallback_used,
            });
            Ok(Outcome::new(&doc, true)
                .stat("n", g.n())
                .stat("colors", out.k)
                .stat("depth", out.depth)
                .stat("fallback_used", out.fallback_used))
        }
        Err(Error::NotLinear(w)) => {
            let doc = json!({"verdict": "not_linear", "witness": w});
            Ok(Outcome::new(&doc, false)
                .stat("n", g.n())
                .stat("colors", psi.size()))
        }
        Err(e) => Err(e.into()),
    }
}

fn formula_json(f: &CnfFormula) -> Value {
    json!({"n_vars": f.n_vars(), "clauses": f.clauses()})
}

pub fn reduce(ctx: &mut Ctx, cnf: &Path, files: Option<&Path>) -> Result<Outcome, Failure> {
    let text = ctx.inputs.read(Some(cnf))?;
    let f = parse_dimacs(&text)?;
    let pre = preprocess(&f);
    match pre.status {
        Status::Reduced => {}
        Status::TriviallySat => {
            let doc = json!({"status": pre.status, "assignment": pre.lift(&[])});
            return Ok(Outcome::new(&doc, true).stat("n_vars", f.n_vars()));
        }
        Status::Unsat => {
            let doc = json!({"status": pre.status});
            return Ok(Outcome::new(&doc, false).stat("n_vars", f.n_vars()));
        }
    }
    let gi = build_gadget(&pre.formula)?;
    let c = gi.coloring();
    let metadata = json!({
        "family": "sat-gadget",
        "status": pre.status,
        "offset": COLOR_OFFSET,
        "formula": formula_json(&f),
        "reduced_formula": formula_json(&pre.formula),
        "var_map": pre.var_map,
        "forced": pre.forced,
        "roles": gi.roles,
    });
    if let Some(dir) = files {
        emit_files(dir, &gi.graph, Some(&c), &metadata)?;
    }
    Ok(Outcome::new(&bundle(&gi.graph, Some(&c), metadata), true)
        .stat("n", gi.graph.n())
        .stat("m", gi.graph.m())
        .stat("colors", c.size()))
}

/// Rebuilds the gadget named in a bundle's metadata and reads the
/// satisfying assignment of the original formula off `path`.
fn decode_assignment(
    metadata: &Value,
    g: &Graph,
    path: &[usize],
) -> Result<Option<Vec<bool>>, Failure> {
    if metadata["family"] != "sat-gadget" {
        return Ok(None);
    }
    let formula: Result<CnfFormula, Failure> = (|| {
        let n = metadata["formula"]["n_vars"]
            .as_u64()
            .ok_or("missing n_vars")?;
        let clauses: Vec<Vec<i32>> = serde_json::from_value(metadata["formula"]["clauses"].clone())
            .map_err(|_| "bad clauses")?;
        CnfFormula::new(n as usize, clauses).map_err(|_| "bad formula")
    })()
    .map_err(|e: &str| Failure::Invalid(format!("gadget metadata: {e}")));
    let f = formula?;
    let pre = preprocess(&f);
    let gi = build_gadget(&pre.formula)?;
    if gi.graph != *g {
        return Err(Failure::Invalid(
            "graph does not match the gadget of its recorded formula".into(),
        ));
    }
    let a = pre.lift(&path_to_assignment(&gi, path)?);
    if !f.evaluate(&a) {
        return Err(Failure::Invalid(
            "decoded assignment does not satisfy the formula".into(),
        ));
    }
    Ok(Some(a))
}

pub fn search_nclc(
    ctx: &mut Ctx,
    graph: Option<&Path>,
    coloring: Option<&Path>,
) -> Result<Outcome, Failure> {
    let loaded = input::load(&mut ctx.inputs, graph, coloring)?;
    let (g, c) = (&loaded.graph, input::require_coloring(&loaded)?);
    let s = find_noncentered_path(g, c, &ctx.budget)?;
    let assignment = match (&s.path, &loaded.metadata) {
        (Some(p), Some(meta)) => decode_assignment(meta, g, p)?,
        _ => None,
    };
    let mut doc = json!({
        "n": g.n(),
        "found": s.path.is_some(),
        "certificate": s.path,
        "nodes": s.nodes,
        "forest_route": s.forest_route,
    });
    if let Some(a) = assignment {
        doc["assignment"] = json!(a);
    }
    Ok(Outcome::new(&doc, s.path.is_some())
        .stat("n", g.n())
        .stat("colors", c.size())
        .stat("nodes", s.nodes))
}

pub fn convert(
    ctx: &mut Ctx,
    input: Option<&Path>,
    from: Option<Format>,
    to: Format,
) -> Result<Outcome, Failure> {
    let text = ctx.inputs.read(input)?;
    let from = from.unwrap_or_else(|| input::detect(input, &text));
    let loaded = input::parse_graph(&text, from)?;
    let (g, c) = (&loaded.graph, loaded.coloring.as_ref());
    let doc = match to {
        Format::El => write_edge_list(g),
        Format::Dot => to_dot(g, c),
        Format::Json => {
            let mut b = Bundle::new(g, c);
            b.metadata = loaded.metadata.clone();
            serde_json::to_string(&b).unwrap() + "\n"
        }
    };
    Ok(Outcome {
        doc,
        positive: true,
        stats: Default::default(),
    }
    .stat("n", g.n())
    .stat("m", g.m()))
}
