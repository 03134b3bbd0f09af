use std::collections::BTreeSet;

use serde_json::{json, Value};

use super::{Command, Failure, Report, SfCommand, SfParams, Source, ThompsonCommand};
use crate::coloring::{extend_coloring, verify_extension, ExtensionReport};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::flow::{check_flow_hypotheses, cross_check_retraction, run_flow};
use crate::homology::{format_hconn, hconnectivity, homology, homology_unreduced, wcm_check, HomologyProfile};
use crate::io::{self, ComplexBody, Document};
use crate::stein_farley::{build_truncation, descending_link, Truncation, TruncationOptions};
use crate::thompson::{standard, Address, TreePair};
use crate::toolkit::{
    check_badsim, check_fiber2, check_fiber_theorem, check_join2, check_join_complex, check_teo_m,
    Contractibility, Fiber2Failure, JoinClass,
};

type Out = std::result::Result<Report, Failure>;

fn load<T>(src: &dyn Source, name: &str, parse: fn(&str) -> Result<T>) -> std::result::Result<T, Failure> {
    let text = src.read(name).map_err(Failure::Input)?;
    parse(&text).map_err(Failure::Input)
}

fn op<T>(r: Result<T>) -> std::result::Result<T, Failure> {
    r.map_err(Failure::Operation)
}

fn complex_json(x: &SimplicialComplex) -> Value {
    serde_json::to_value(ComplexBody::from_complex(x)).expect("serializable")
}

fn doc_json(d: &Document) -> Value {
    serde_json::from_str(&io::to_text(d)).expect("own output parses")
}

fn homology_fields(r: &mut Report, h: &HomologyProfile) {
    r.add_display("reduced", h);
    r.add("betti", h.betti_numbers());
    let torsion: Vec<Vec<String>> = (0..h.degrees.len())
        .map(|k| h.torsion(k).iter().map(ToString::to_string).collect())
        .collect();
    r.add("torsion", json!(torsion));
}

fn contractibility(c: &Contractibility) -> String {
    match c {
        Contractibility::Cone(v) => format!("cone on {v}"),
        Contractibility::Collapsible { steps } => format!("collapsible in {steps} steps"),
        Contractibility::AcyclicSimplyConnected => "acyclic, trivial pi1 certificate".into(),
    }
}

fn extension_fields(r: &mut Report, e: &ExtensionReport) {
    for (name, c) in e.entries() {
        let v = match &c.witness {
            None if c.passed => "pass".to_string(),
            None => "fail".to_string(),
            Some(w) => format!("fail: {w}"),
        };
        r.add(name, v);
    }
    r.set_pass(e.all_passed());
}

pub(super) fn dispatch(cmd: &Command, src: &dyn Source) -> Out {
    match cmd {
        Command::Homology(i) => {
            let x = load(src, &i.input, io::parse_complex)?;
            let mut r = Report::new("homology");
            r.add("vertices", x.num_vertices()).add("f_vector", x.f_vector());
            homology_fields(&mut r, &homology(&x));
            r.add("betti_unreduced", homology_unreduced(&x).betti_numbers());
            Ok(r)
        }
        Command::Hconn(i) => {
            let x = load(src, &i.input, io::parse_complex)?;
            let c = hconnectivity(&x);
            let mut r = Report::new("hconn");
            r.add("hconn", hconn_value(c.hconn)).add_display("pi1_trivial", c.pi1_trivial);
            Ok(r)
        }
        Command::WcmCheck { input, n } => {
            let x = load(src, &input.input, io::parse_complex)?;
            let w = wcm_check(&x, *n);
            let mut r = Report::new("wcm-check");
            r.add("n", *n).add("wcm", w.holds);
            if let Some(wit) = &w.witness {
                r.add_display("witness", wit);
            }
            r.set_pass(w.holds);
            Ok(r)
        }
        Command::Xm { input, m } => {
            let x = load(src, &input.input, io::parse_complex)?;
            let xm = op(x.xm_subcomplex(*m))?;
            let mut r = Report::new("xm");
            r.add("m", *m)
                .add("vertices", xm.num_vertices())
                .add("f_vector", xm.f_vector())
                .add("hconn", hconn_value(crate::homology::hconn(&xm)))
                .add("complex", doc_json(&Document::Complex(xm)));
            Ok(r)
        }
        Command::TeoMCheck { input, n, m } => {
            let x = load(src, &input.input, io::parse_complex)?;
            let t = op(check_teo_m(&x, *n, *m))?;
            let mut r = Report::new("teo-m-check");
            r.add("n", t.n).add("m", t.m).add("hypothesis_wcm", t.hypothesis_holds);
            if let Some(w) = &t.wcm_witness {
                r.add_display("witness", w);
            }
            if let Some(h) = t.xm_hconn {
                r.add("xm_hconn", hconn_value(h)).add("required", t.required);
            }
            r.set_pass(t.conclusion_holds == Some(true));
            Ok(r)
        }
        Command::FiberCheck { input, n } => {
            let p = load(src, &input.input, io::parse_map)?;
            let f = op(check_fiber_theorem(&p, *n))?;
            let mut r = Report::new("fiber-check");
            r.add("n", f.n).add("fibers_connected", f.hypothesis_holds);
            if let Some((s, h)) = &f.failing_fiber {
                r.add("witness", format!("fiber over {s} has connectivity {}", format_hconn(*h)));
            }
            r.add("source_hconn", hconn_value(f.source_hconn))
                .add("target_hconn", hconn_value(f.target_hconn));
            if let Some(c) = f.conclusion_holds {
                r.add("conclusion", c);
            }
            r.set_pass(f.conclusion_holds == Some(true));
            Ok(r)
        }
        Command::Fiber2Check { input, m } => {
            let p = load(src, &input.input, io::parse_map)?;
            let f = op(check_fiber2(&p, *m))?;
            let mut r = Report::new("fiber2-check");
            r.add("m", f.m).add("fibers_contractible", f.hypothesis_holds);
            match &f.failure {
                Some(Fiber2Failure::ImageTooSmall(s)) => {
                    r.add("witness", format!("image of {s} is too small"));
                }
                Some(Fiber2Failure::NotContractible(s)) => {
                    r.add("witness", format!("fiber over {s} not certified contractible"));
                }
                None => {}
            }
            let certs: Vec<String> = f
                .certificates
                .iter()
                .map(|(s, c)| format!("{s}: {}", contractibility(c)))
                .collect();
            if !certs.is_empty() {
                r.add("certificates", certs.join("\n"));
            }
            let iso: Vec<Value> = f.isomorphism_degrees.iter().map(|(d, ok)| json!([d, ok])).collect();
            r.add("isomorphism_degrees", iso);
            r.set_pass(f.conclusion_holds == Some(true));
            Ok(r)
        }
        Command::BadsimplexCheck { input, m } => {
            let b = load(src, &input.input, io::parse_bad_assignment)?;
            let rep = op(check_badsim(&b, *m))?;
            let mut r = Report::new("badsimplex-check");
            r.add("m", rep.m)
                .add("bad_simplices", b.bad_simplices().len())
                .add("good_links_pass", rep.hypothesis_holds);
            if let Some((s, h, need)) = &rep.failing {
                r.add(
                    "witness",
                    format!("good link of {s} has connectivity {}, need {need}", format_hconn(*h)),
                );
            }
            if rep.conclusion_holds == Some(true) {
                r.add(
                    "conclusion",
                    format!("isomorphism degrees <= {}, surjective in degree {}", rep.m, rep.m + 1),
                );
            } else if rep.hypothesis_holds {
                let bad: Vec<usize> = rep
                    .isomorphism_degrees
                    .iter()
                    .filter(|(_, ok)| !ok)
                    .map(|(d, _)| *d)
                    .collect();
                r.add("not_isomorphic_in", bad).add("surjective_next", rep.surjective_next);
            }
            r.set_pass(rep.conclusion_holds == Some(true));
            Ok(r)
        }
        Command::JoinCheck(i) => {
            let p = load(src, &i.input, io::parse_map)?;
            let c = check_join_complex(&p);
            let mut r = Report::new("join-check");
            r.add("class", c.name());
            match &c {
                JoinClass::NotJoin(w) | JoinClass::Join(w) => {
                    r.add_display("witness", w);
                }
                JoinClass::CompleteJoin => {}
            }
            r.set_pass(c == JoinClass::CompleteJoin);
            Ok(r)
        }
        Command::Join2Check { input, n } => {
            let p = load(src, &input.input, io::parse_map)?;
            let j = op(check_join2(&p, *n))?;
            let mut r = Report::new("join2-check");
            r.add("n", j.n).add_display("details", &j).add("consistent", j.consistent);
            r.set_pass(j.consistent);
            Ok(r)
        }
        Command::FlowCheck { input, k_max } => {
            let f = load(src, &input.input, io::parse_flow)?;
            let mut r = Report::new("flow-check");
            r.add("k_max", *k_max);
            match check_flow_hypotheses(&f, *k_max) {
                Ok(c) => {
                    r.add("simplices_checked", c.simplices_checked)
                        .add("max_descent_steps", c.max_descent_steps);
                }
                Err(Error::HypothesisViolation { condition, witness }) => {
                    r.add("violated_condition", condition).add_display("witness", witness).fail();
                }
                Err(e) => {
                    r.add_display("error", e).fail();
                }
            }
            Ok(r)
        }
        Command::FlowRun { input, k_max } => {
            let f = load(src, &input.input, io::parse_flow)?;
            let mut r = Report::new("flow-run");
            match run_flow(&f, *k_max) {
                Ok(run) => {
                    let lines: Vec<String> = run
                        .traces
                        .iter()
                        .map(|t| t.simplices.iter().map(ToString::to_string).collect::<Vec<_>>().join(" -> "))
                        .collect();
                    r.add("traces", lines.join("\n")).add("max_trace_length", run.max_len);
                    let x = cross_check_retraction(&f);
                    r.add("homology_x", x.x_homology.betti_numbers())
                        .add("homology_y", x.y_homology.betti_numbers())
                        .add("homology_equal", x.equal);
                    r.set_pass(x.equal);
                }
                Err(e) => {
                    r.add_display("error", e).fail();
                }
            }
            Ok(r)
        }
        Command::ColoringExtend { input, k, labels } => {
            let s = load(src, &input.input, io::parse_labeled)?;
            let e0: BTreeSet<u32> = labels.iter().copied().collect();
            let d = op(extend_coloring(&s, &e0, *k))?;
            let mut r = Report::new("coloring-extend");
            let interior = d.complex.num_vertices() - s.complex.num_vertices();
            r.add("k", *k)
                .add("interior_vertices", interior)
                .add("f_vector", d.complex.f_vector());
            extension_fields(&mut r, &verify_extension(&s, &d, &e0, *k));
            r.add("disk", doc_json(&Document::Labeled(d)));
            Ok(r)
        }
        Command::ColoringVerify { sphere, disk, k, labels } => {
            let s = load(src, sphere, io::parse_labeled)?;
            let d = load(src, disk, io::parse_labeled)?;
            let e0: BTreeSet<u32> = labels.iter().copied().collect();
            let mut r = Report::new("coloring-verify");
            r.add("k", *k);
            extension_fields(&mut r, &verify_extension(&s, &d, &e0, *k));
            Ok(r)
        }
        Command::Thompson(t) => thompson(t, src),
        Command::SteinFarley(c) => stein_farley(c, src),
        Command::Selftest { fixtures } => {
            let run = match fixtures {
                Some(dir) => super::selftest::run_dir(dir).map_err(Failure::Input)?,
                None => super::selftest::run_bundled(),
            };
            Ok(run.report())
        }
    }
}

fn pair_fields(r: &mut Report, key: &str, t: &TreePair) {
    r.add_display(key, t);
    r.add(&format!("{key}_document"), doc_json(&Document::TreePair(t.clone())));
}

fn thompson(t: &ThompsonCommand, src: &dyn Source) -> Out {
    let mut r = Report::new("thompson");
    match t {
        ThompsonCommand::Compose { a, b } => {
            let a = load(src, a, io::parse_tree_pair)?;
            let b = load(src, b, io::parse_tree_pair)?;
            let c = a.compose(&b).map_err(Failure::Input)?;
            r.add("verb", "compose");
            pair_fields(&mut r, "result", &c);
        }
        ThompsonCommand::Inverse { a } => {
            let a = load(src, a, io::parse_tree_pair)?;
            r.add("verb", "inverse");
            pair_fields(&mut r, "result", &a.inverse());
        }
        ThompsonCommand::Reduce { a } => {
            let a = load(src, a, io::parse_tree_pair_unreduced)?;
            let red = a.reduce();
            r.add("verb", "reduce")
                .add("carets_before", a.domain().num_carets())
                .add("carets_after", red.domain().num_carets());
            pair_fields(&mut r, "result", &red);
        }
        ThompsonCommand::Act { a, address } => {
            let g = load(src, a, io::parse_tree_pair)?;
            let addr = Address::parse(address).map_err(Failure::Input)?;
            let img = op(g.act(&addr))?;
            r.add("verb", "act").add_display("address", addr).add_display("image", img);
        }
    }
    Ok(r)
}

fn load_gens(p: &SfParams, src: &dyn Source) -> std::result::Result<Vec<(String, TreePair)>, Failure> {
    let mut gens = match p.gens.as_deref() {
        None => Vec::new(),
        Some("standard") => {
            if (p.d, p.r) != (2, 1) {
                return Err(Failure::Input(Error::ParameterMismatch(
                    "the standard generators belong to V_{2,1}".into(),
                )));
            }
            standard::all().into_iter().map(|(n, g)| (n.to_string(), g)).collect()
        }
        Some(name) => {
            let g = load(src, name, io::parse_gens)?;
            if (g.d, g.r) != (p.d, p.r) {
                return Err(Failure::Input(Error::ParameterMismatch(format!(
                    "generators are in V_{{{},{}}}, truncation is for V_{{{},{}}}",
                    g.d, g.r, p.d, p.r
                ))));
            }
            g.elements
        }
    };
    if let Some(c) = p.max_gen_carets {
        gens.retain(|(_, g)| g.domain().num_carets() <= c);
    }
    Ok(gens)
}

fn truncation(p: &SfParams, gens: &[TreePair]) -> std::result::Result<Truncation, Failure> {
    if p.d < 1 || p.r < 1 {
        return Err(Failure::Input(Error::InvalidArgument("need d >= 1 and r >= 1".into())));
    }
    let opts = TruncationOptions {
        max_vertices: p.cap,
        gen_rounds: p.rounds,
    };
    op(build_truncation(p.d, p.r, p.max_height, gens, opts))
}

fn stein_farley(c: &SfCommand, src: &dyn Source) -> Out {
    let params = match c {
        SfCommand::Build { params, .. } | SfCommand::Desclink { params, .. } => params,
    };
    let named = load_gens(params, src)?;
    let gens: Vec<TreePair> = named.iter().map(|(_, g)| g.clone()).collect();
    let t = truncation(params, &gens)?;
    let mut r = Report::new("stein-farley");
    r.add("d", params.d)
        .add("r", params.r)
        .add("max_height", params.max_height)
        .add("generators", named.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>());
    match c {
        SfCommand::Build { cells, .. } => {
            r.add("verb", "build")
                .add("vertices_by_height", t.vertices_by_height())
                .add("cubes_by_dim", t.cube_counts());
            let census = op(t.orbit_census(&gens))?;
            r.add("vertex_orbits_by_height", census.vertex_orbits_by_height.clone())
                .add("cube_orbits_by_dim", census.cube_orbits_by_dim.clone());
            let ic = t.check_intervals();
            r.add("intervals_checked", ic.cubes_checked)
                .add("interval_failures", ic.failures.len());
            homology_fields(&mut r, &t.homology());
            if *cells {
                let verts: Vec<String> = t.vertices().iter().enumerate().map(|(i, v)| format!("{i}: {v}")).collect();
                r.add("vertex_list", verts.join("\n"));
                let mut cubes = Vec::new();
                for q in 1..t.cube_counts().len() {
                    for c in t.cubes(q) {
                        cubes.push(format!("dim {q}: [{}, {}]", c.bottom, c.top));
                    }
                }
                if !cubes.is_empty() {
                    r.add("cube_list", cubes.join("\n"));
                }
            }
            r.set_pass(ic.passed());
        }
        SfCommand::Desclink { vertex, .. } => {
            let Some(v) = t.vertices().get(*vertex) else {
                return Err(Failure::Input(Error::InvalidArgument(format!(
                    "vertex {vertex} out of range (truncation has {})",
                    t.vertices().len()
                ))));
            };
            let lk = descending_link(v);
            let lower: Vec<String> = lk
                .tuples
                .iter()
                .zip(&lk.lower)
                .enumerate()
                .map(|(i, (tu, w))| {
                    let at = t.vertex_index(w).map_or("outside".to_string(), |j| format!("vertex {j}"));
                    format!("{i}: merge {tu:?} -> {at}")
                })
                .collect();
            r.add("verb", "desclink")
                .add("vertex", *vertex)
                .add_display("vertex_class", v)
                .add("height", v.height())
                .add("copies", v.copies())
                .add("link_vertices", lk.tuples.len())
                .add("link_dim", lk.dim());
            if !lower.is_empty() {
                r.add("lower_neighbours", lower.join("\n"));
            }
            r.add("link", complex_json(&lk.complex));
        }
    }
    Ok(r)
}

/// A number, or "inf" for acyclic complexes.
fn hconn_value(h: i32) -> Value {
    if h == i32::MAX {
        Value::from("inf")
    } else {
        Value::from(h)
    }
}
