//! Text reports and exit codes for the command-line tool.

use std::fmt::Write as _;
use std::time::Instant;

use crate::affine1d::{decide, AffineSystem};
use crate::cert::{
    check_inductive_lds, check_system, find_witness, render_proof_table, DEFAULT_WITNESS_BUDGET,
};
use crate::error::Error;
use crate::instance::{Instance, LdsInstance, LdsTarget};
use crate::semilinear::{CosetUnion, Glyphs};
use crate::zinv::strongest_zlinear_trace;
use crate::ztarget::{decide_zlinear_target, hybridize_target, ZVerdict, DEFAULT_STATE_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

const RULE: &str = "-----------------";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub code: i32,
}

impl Report {
    pub fn from_error(e: &Error) -> Report {
        Report {
            text: format!("error: {e}\n"),
            code: exit_code(e),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Syntax { .. } | Error::EmptyFunctions | Error::DimensionMismatch { .. } => EXIT_PARSE,
        Error::ResourceCap { .. } => EXIT_RESOURCE,
        _ => EXIT_FAILURE,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub proof: bool,
    pub witness_budget: usize,
    pub glyphs: Glyphs,
    pub state_cap: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            proof: false,
            witness_budget: DEFAULT_WITNESS_BUDGET,
            glyphs: Glyphs::Ascii,
            state_cap: DEFAULT_STATE_CAP,
        }
    }
}

/// Lines between rules; each block is followed by a rule.
struct Sections {
    text: String,
}

impl Sections {
    fn new() -> Self {
        Sections {
            text: format!("{RULE}\n"),
        }
    }

    fn block(&mut self, lines: &[String]) {
        for l in lines {
            self.text.push_str(l);
            self.text.push('\n');
        }
        self.text.push_str(RULE);
        self.text.push('\n');
    }
}

fn secs(t: Instant) -> f64 {
    t.elapsed().as_secs_f64()
}

pub fn run_check(instance: &Instance, opts: &CheckOptions) -> Report {
    match instance {
        Instance::Affine(sys) => check_affine(sys, opts),
        Instance::Lds(inst) => check_lds(inst, opts),
    }
}

fn check_affine(sys: &AffineSystem, opts: &CheckOptions) -> Report {
    let mut out = Sections::new();
    out.block(&["Interpretation of input".into(), sys.interpretation()]);

    let t = Instant::now();
    let decision = decide(sys);
    let build = secs(t);
    out.block(&[format!("invariant: {}", decision.invariant.render(opts.glyphs))]);

    let t = Instant::now();
    let checked = check_system(&decision.invariant, sys, !decision.reachable);
    let proof_time = secs(t);

    let mut code = EXIT_OK;
    let mut verdict = vec![format!(
        "reachability: {}",
        if decision.reachable { "reachable" } else { "unreachable" }
    )];
    if decision.reachable {
        match find_witness(sys, opts.witness_budget) {
            Some(w) => verdict.push(format!("witness: {}", w.render_trace())),
            None => {
                verdict.push(format!(
                    "witness: not found within {} nodes",
                    opts.witness_budget
                ));
                code = EXIT_RESOURCE;
            }
        }
    } else {
        verdict.push(format!("target {} disjoint from invariant", sys.target));
    }
    out.block(&verdict);

    match &checked {
        Ok(cert) if opts.proof => out.block(&[
            "Proof of invariance".into(),
            render_proof_table(&cert.rows, opts.glyphs),
        ]),
        Ok(_) => {}
        Err(e) => {
            out.block(&[format!("certificate check failed: {e}")]);
            code = EXIT_FAILURE;
        }
    }
    out.block(&[
        format!("time invariant {build:.9}"),
        format!("time proofOfInvariant {proof_time:.9}"),
    ]);
    Report {
        text: out.text,
        code,
    }
}

fn check_lds(inst: &LdsInstance, opts: &CheckOptions) -> Report {
    let sys = &inst.system;
    let mut out = Sections::new();
    let target = inst.target.as_ref().map(LdsTarget::as_coset);
    out.block(&[
        "Interpretation of input".into(),
        format!(
            "x0: {} target: {} matrices: [{}]",
            sys.x0(),
            target.as_ref().map_or("none".to_string(), ToString::to_string),
            sys.matrices()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        ),
    ]);

    let t = Instant::now();
    let zinv = strongest_zlinear_trace(sys).pop().expect("nonempty trace");
    let mut invariant = CosetUnion::new([zinv]);
    let mut verdict = Vec::new();
    let mut code = EXIT_OK;
    let mut disjoint = false;
    match &target {
        None => {}
        Some(y) if invariant.components()[0].is_disjoint_from(y).unwrap_or(false) => {
            disjoint = true;
            verdict.push("reachability: unreachable".to_string());
            verdict.push(format!("target {y} disjoint from invariant"));
        }
        Some(y) if y.lattice().is_full_rank() => match decide_zlinear_target(sys, y, opts.state_cap) {
            Ok(ZVerdict::Reachable { word, endpoint }) => {
                verdict.push("reachability: reachable".into());
                verdict.push(format!("witness word: {word:?} endpoint: {endpoint}"));
            }
            Ok(ZVerdict::Unreachable { invariant: residues }) => {
                invariant = residues;
                disjoint = true;
                verdict.push("reachability: unreachable".into());
                verdict.push(format!("target {y} disjoint from invariant"));
            }
            Err(e) => {
                verdict.push(format!("reachability: unknown ({e})"));
                code = exit_code(&e);
            }
        },
        Some(_) => {
            verdict.push("reachability: unknown (target meets the strongest Z-linear invariant and is not full-dimensional)".into());
        }
    }
    let build = secs(t);
    out.block(&[format!("invariant: {}", invariant.render(opts.glyphs))]);
    if !verdict.is_empty() {
        out.block(&verdict);
    }

    let t = Instant::now();
    let checked = check_inductive_lds(&invariant, sys, target.as_ref().filter(|_| disjoint));
    let proof_time = secs(t);
    match &checked {
        Ok(cert) if opts.proof => out.block(&[
            "Proof of invariance".into(),
            render_proof_table(&cert.rows, opts.glyphs),
        ]),
        Ok(_) => {}
        Err(e) => {
            out.block(&[format!("certificate check failed: {e}")]);
            code = EXIT_FAILURE;
        }
    }
    out.block(&[
        format!("time invariant {build:.9}"),
        format!("time proofOfInvariant {proof_time:.9}"),
    ]);
    Report {
        text: out.text,
        code,
    }
}

/// Strongest Z-linear invariant, with the saturation iterates.
pub fn run_strongest(instance: &Instance) -> Report {
    let inst = instance.to_lds();
    let trace = strongest_zlinear_trace(&inst.system);
    let inv = trace.last().expect("nonempty").clone();
    let mut text = String::new();
    for (i, l) in trace.iter().enumerate() {
        let _ = writeln!(text, "L{i}: {l}");
    }
    let _ = writeln!(text, "invariant: {inv}");
    let _ = writeln!(text, "rank: {} of {}", inv.lattice().rank(), inv.dim());
    let mut code = EXIT_OK;
    match check_inductive_lds(&CosetUnion::new([inv.clone()]), &inst.system, None) {
        Ok(cert) => {
            let _ = writeln!(text, "inductive: yes ({} rows)", cert.rows.len());
        }
        Err(e) => {
            let _ = writeln!(text, "inductive: no ({e})");
            code = EXIT_FAILURE;
        }
    }
    if let Some(y) = inst.target.as_ref().map(LdsTarget::as_coset) {
        let disjoint = inv.is_disjoint_from(&y).unwrap_or(false);
        let _ = writeln!(
            text,
            "target {y} {}",
            if disjoint {
                "disjoint from invariant"
            } else {
                "meets invariant"
            }
        );
    }
    Report { text, code }
}

/// Decide a full-dimensional Z-linear target through residues.
pub fn run_ztarget(instance: &Instance, state_cap: u64) -> Report {
    let inst = instance.to_lds();
    let Some(y) = inst.target.as_ref().map(LdsTarget::as_coset) else {
        return Report {
            text: "error: instance has no target\n".into(),
            code: EXIT_FAILURE,
        };
    };
    let hybrid = match hybridize_target(&y, state_cap) {
        Ok(h) => h,
        Err(e) => return Report::from_error(&e),
    };
    let mut text = String::new();
    let _ = writeln!(text, "target: {y}");
    let _ = writeln!(text, "modulus: {}", hybrid.m);
    let _ = writeln!(text, "target residues: {}", hybrid.residues.len());
    let mut code = EXIT_OK;
    match decide_zlinear_target(&inst.system, &y, state_cap) {
        Ok(ZVerdict::Reachable { word, endpoint }) => {
            let _ = writeln!(text, "reachability: reachable");
            let _ = writeln!(text, "word: {word:?}");
            let _ = writeln!(text, "endpoint: {endpoint}");
        }
        Ok(ZVerdict::Unreachable { invariant }) => {
            let _ = writeln!(text, "reachability: unreachable");
            let _ = writeln!(text, "invariant: {invariant}");
            if let Err(e) = check_inductive_lds(&invariant, &inst.system, Some(&y)) {
                let _ = writeln!(text, "certificate check failed: {e}");
                code = EXIT_FAILURE;
            }
        }
        Err(e) => return Report::from_error(&e),
    }
    Report { text, code }
}

/// Drop timing lines, which vary between runs.
pub fn strip_timings(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with("time "))
        .map(|l| format!("{l}\n"))
        .collect()
}
