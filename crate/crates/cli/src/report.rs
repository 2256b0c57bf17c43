//! Report assembly: every command handler produces one `Report` carrying the
//! machine-readable JSON value, the human-readable text lines, and the exit
//! code. Verdicts serialize as objects {value, status, witness?} with status
//! "certified" or "up_to_bound:B", so downstream tooling can tell proof from
//! bounded evidence. JSON keys come out sorted, making reports byte-stable.

use cotilt_core::field::Field;
use cotilt_core::foxby::ClassMembership;
use cotilt_core::gorenstein::{GorDim, GorensteinProfile};
use cotilt_core::homology::{CertStatus, Dim};
use cotilt_core::module::Module;
use cotilt_core::tilting::{
    ChainOutcome, CotiltingReport, TensorFaithfulReport, TiltingReport, VariantResult,
    WakamatsuReport,
};
use cotilt_core::verify::{CaseClass, TheoremOutcome};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

pub struct Report {
    pub json: Value,
    pub lines: Vec<String>,
    pub exit: i32,
}

fn status_str(s: CertStatus) -> String {
    match s {
        CertStatus::Certified => "certified".into(),
        CertStatus::UpToBound(b) => format!("up_to_bound:{b}"),
    }
}

fn status_text(s: CertStatus) -> String {
    match s {
        CertStatus::Certified => "certified".into(),
        CertStatus::UpToBound(b) => format!("up to bound {b}"),
    }
}

fn dim_json(d: &Dim) -> Value {
    match d {
        Dim::Exactly(n) => json!(n),
        Dim::AtLeast(n) => json!(format!(">={n}")),
    }
}

/// A dimension search that did not terminate was exhausted at its bound.
fn dim_status(d: &Dim) -> CertStatus {
    match d {
        Dim::Exactly(_) => CertStatus::Certified,
        Dim::AtLeast(n) => CertStatus::UpToBound(n.saturating_sub(1)),
    }
}

fn verdict(value: Option<bool>, status: CertStatus) -> Value {
    json!({ "value": value, "status": status_str(status) })
}

fn verdict_witness(value: Option<bool>, status: CertStatus, witness: Option<Value>) -> Value {
    match witness {
        Some(w) => json!({ "value": value, "status": status_str(status), "witness": w }),
        None => verdict(value, status),
    }
}

fn dim_verdict(d: &Dim) -> Value {
    json!({ "value": dim_json(d), "status": status_str(dim_status(d)) })
}

fn bool_text(value: Option<bool>) -> &'static str {
    match value {
        Some(true) => "true",
        Some(false) => "false",
        None => "undecided",
    }
}

fn fmt_verdict(value: Option<bool>, status: CertStatus) -> String {
    format!("{} ({})", bool_text(value), status_text(status))
}

fn fmt_dim(d: &Dim) -> String {
    format!("{} ({})", d, status_text(dim_status(d)))
}

fn chain_json<K: Field>(c: &ChainOutcome<K>) -> Value {
    match c {
        ChainOutcome::Complete { terms, length } => {
            let t: Vec<String> = terms.iter().map(Module::dims_label).collect();
            json!({ "outcome": "complete", "length": length, "terms": t })
        }
        ChainOutcome::Failed { stage } => json!({ "outcome": "failed", "stage": stage }),
        ChainOutcome::Exhausted { bound } => json!({ "outcome": "exhausted", "bound": bound }),
    }
}

fn chain_text<K: Field>(c: &ChainOutcome<K>) -> String {
    match c {
        ChainOutcome::Complete { terms, length } => {
            let t: Vec<String> = terms.iter().map(Module::dims_label).collect();
            format!("complete, length {length}, terms {}", t.join(" "))
        }
        ChainOutcome::Failed { stage } => format!("failed at stage {stage}"),
        ChainOutcome::Exhausted { bound } => format!("exhausted at bound {bound}"),
    }
}

pub fn degrees_report(kind: &str, mname: &str, nname: &str, dims: &[usize]) -> Report {
    let json = json!({
        "command": kind,
        "module": mname,
        "against": nname,
        "dims": dims,
        "status": "certified",
    });
    let dims_str: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
    let lines = vec![
        format!("{kind} of {mname} against {nname}"),
        format!("degrees 0..={}: {}", dims.len() - 1, dims_str.join(" ")),
    ];
    Report { json, lines, exit: EXIT_OK }
}

pub fn dim_report(kind: &str, mname: &str, d: Dim) -> Report {
    let json = json!({ "command": kind, "module": mname, kind: dim_verdict(&d) });
    let lines = vec![format!("{kind} of {mname}: {}", fmt_dim(&d))];
    let exit = if d.is_finite() { EXIT_OK } else { EXIT_INCONCLUSIVE };
    Report { json, lines, exit }
}

pub fn gor_dim_report<K: Field>(kind: &str, mname: &str, g: &GorDim<K>) -> Report {
    let witness = g.witness.as_ref().map(|w| json!(w.dims_label()));
    let json = json!({
        "command": kind,
        "module": mname,
        kind: verdict_witness(
            g.dim.is_finite().then_some(true),
            g.status,
            Some(json!({ "dim": dim_json(&g.dim), "syzygy": witness })),
        ),
    });
    let mut lines = vec![format!(
        "{kind} of {mname}: {} ({})",
        g.dim,
        status_text(g.status.merge(dim_status(&g.dim)))
    )];
    if let Some(w) = &g.witness {
        lines.push(format!("witness syzygy dims: {}", w.dims_label()));
    }
    let exit = if g.dim.is_finite() && g.status == CertStatus::Certified {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    };
    Report { json, lines, exit }
}

pub fn profile_report(p: &GorensteinProfile) -> Report {
    let json = json!({
        "command": "gorenstein-profile",
        "right_injective_dimension": dim_verdict(&p.right_injective_dim),
        "left_injective_dimension": dim_verdict(&p.left_injective_dim),
        "is_gorenstein": verdict(
            if p.is_gorenstein() { Some(true) } else { None },
            dim_status(&p.right_injective_dim).merge(dim_status(&p.left_injective_dim)),
        ),
    });
    let lines = vec![
        "gorenstein profile".to_string(),
        format!("right injective dimension: {}", fmt_dim(&p.right_injective_dim)),
        format!("left injective dimension: {}", fmt_dim(&p.left_injective_dim)),
        format!(
            "gorenstein: {}",
            if p.is_gorenstein() { "true" } else { "undecided" }
        ),
    ];
    let exit = if p.is_gorenstein() { EXIT_OK } else { EXIT_INCONCLUSIVE };
    Report { json, lines, exit }
}

pub fn tilting_report<K: Field>(name: &str, rep: &TiltingReport<K>) -> Report {
    let json = json!({
        "command": "tilting",
        "module": name,
        "is_tilting": verdict(rep.is_tilting, rep.status),
        "pd": dim_verdict(&rep.pd),
        "rigid": verdict_witness(
            Some(rep.rigid),
            rep.rigid_status,
            rep.rigid_witness.map(|d| json!({ "nonvanishing_degree": d })),
        ),
        "coresolution": chain_json(&rep.coresolution),
    });
    let lines = vec![
        format!("tilting check for {name}"),
        format!("pd: {}", fmt_dim(&rep.pd)),
        format!("rigid: {}", fmt_verdict(Some(rep.rigid), rep.rigid_status)),
        format!("coresolution of R: {}", chain_text(&rep.coresolution)),
        format!("is_tilting: {}", fmt_verdict(rep.is_tilting, rep.status)),
    ];
    let exit = if rep.is_tilting.is_some() { EXIT_OK } else { EXIT_INCONCLUSIVE };
    Report { json, lines, exit }
}

pub fn wakamatsu_report(name: &str, rep: &WakamatsuReport) -> Report {
    let json = json!({
        "command": "wakamatsu",
        "module": name,
        "holds": verdict(rep.holds, rep.status),
        "left_action_full": verdict(Some(rep.left_action_full), CertStatus::Certified),
        "homothety_iso": verdict(Some(rep.homothety_full), CertStatus::Certified),
        "right_rigid": verdict(Some(rep.right_rigid), rep.right_status),
        "left_rigid": verdict(Some(rep.left_rigid), rep.left_status),
    });
    let lines = vec![
        format!("wakamatsu tilting check for {name}"),
        format!("faithful balance (left action full): {}", rep.left_action_full),
        format!("homothety is an isomorphism: {}", rep.homothety_full),
        format!("no right self-extensions: {}", fmt_verdict(Some(rep.right_rigid), rep.right_status)),
        format!("no left self-extensions: {}", fmt_verdict(Some(rep.left_rigid), rep.left_status)),
        format!("holds: {}", fmt_verdict(rep.holds, rep.status)),
    ];
    let exit = if rep.holds.is_some() { EXIT_OK } else { EXIT_INCONCLUSIVE };
    Report { json, lines, exit }
}

fn variant_json<K: Field>(v: &VariantResult<K>) -> Value {
    let chain = v.chain.as_ref().map(chain_json);
    json!({
        "value": v.holds,
        "status": status_str(v.status),
        "note": v.note,
        "chain": chain,
    })
}

pub fn cotilting_report<K: Field>(name: &str, rep: &CotiltingReport<K>) -> Report {
    let json = json!({
        "command": "cotilting",
        "module": name,
        "is_cotilting": verdict(rep.is_cotilting, rep.status),
        "injective_dimension": dim_verdict(&rep.id),
        "rigid": verdict(Some(rep.rigid), rep.rigid_status),
        "variants": {
            "a": variant_json(&rep.variant_a),
            "b": variant_json(&rep.variant_b),
            "c": variant_json(&rep.variant_c),
            "d": variant_json(&rep.variant_d),
        },
        "variants_agree": rep.variants_agree,
    });
    let mut lines = vec![
        format!("cotilting check for {name}"),
        format!("injective dimension: {}", fmt_dim(&rep.id)),
        format!("rigid: {}", fmt_verdict(Some(rep.rigid), rep.rigid_status)),
    ];
    for (tag, v) in [
        ("a", &rep.variant_a),
        ("b", &rep.variant_b),
        ("c", &rep.variant_c),
        ("d", &rep.variant_d),
    ] {
        let mut line = format!("variant ({tag}): {}", fmt_verdict(v.holds, v.status));
        if !v.note.is_empty() {
            line.push_str(&format!(" [{}]", v.note));
        }
        lines.push(line);
    }
    lines.push(format!("variants agree: {}", rep.variants_agree));
    lines.push(format!("is_cotilting: {}", fmt_verdict(rep.is_cotilting, rep.status)));
    let exit = if !rep.variants_agree {
        EXIT_REFUTED
    } else if rep.is_cotilting.is_some() {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    };
    Report { json, lines, exit }
}

pub fn faithful_report(
    name: &str,
    rep: &TensorFaithfulReport,
    s_vertices: usize,
    r_names: &[String],
) -> Report {
    let witness = rep.witness.map(|(on_s, v)| {
        if on_s {
            json!({ "side": "endomorphism", "simple": v })
        } else {
            json!({ "side": "base", "simple": r_names[v].clone() })
        }
    });
    let json = json!({
        "command": "tensorly-faithful",
        "bimodule": name,
        "faithful": verdict_witness(Some(rep.faithful), CertStatus::Certified, witness),
        "left_simple_tensor_dims": rep.left_simple_tensors,
        "right_simple_tensor_dims": rep.right_simple_tensors,
    });
    let fmt_list = |v: &[usize]| {
        v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
    };
    let mut lines = vec![
        format!("tensor faithfulness of {name} over its endomorphism algebra"),
        format!(
            "simple right modules of the endomorphism algebra ({} vertices), tensor dims: {}",
            s_vertices,
            fmt_list(&rep.left_simple_tensors)
        ),
        format!(
            "simple left modules of the base algebra, tensor dims: {}",
            fmt_list(&rep.right_simple_tensors)
        ),
        format!("faithful: {}", rep.faithful),
    ];
    if let Some((on_s, v)) = rep.witness {
        if on_s {
            lines.push(format!("witness: simple at vertex {v} of the endomorphism algebra is killed"));
        } else {
            lines.push(format!("witness: simple left module at vertex {} is killed", r_names[v]));
        }
    }
    Report { json, lines, exit: EXIT_OK }
}

pub fn membership_report(xname: &str, tname: &str, rep: &ClassMembership) -> Report {
    let class = rep.class.to_string().to_lowercase();
    let json = json!({
        "command": class,
        "module": xname,
        "bimodule": tname,
        "member": verdict(rep.member, rep.status),
        "tor_vanishing": verdict_witness(
            Some(rep.tor_vanish),
            rep.tor_status,
            rep.tor_witness.map(|d| json!({ "nonvanishing_degree": d })),
        ),
        "ext_vanishing": verdict_witness(
            Some(rep.ext_vanish),
            rep.ext_status,
            rep.ext_witness.map(|d| json!({ "nonvanishing_degree": d })),
        ),
        "natural_map_iso": verdict(Some(rep.unit_iso), CertStatus::Certified),
    });
    let lines = vec![
        format!("{class} class membership of {xname} for {tname}"),
        format!("tor vanishing: {}", fmt_verdict(Some(rep.tor_vanish), rep.tor_status)),
        format!("ext vanishing: {}", fmt_verdict(Some(rep.ext_vanish), rep.ext_status)),
        format!("natural map invertible: {}", rep.unit_iso),
        format!("member: {}", fmt_verdict(rep.member, rep.status)),
    ];
    let exit = if rep.member.is_some() { EXIT_OK } else { EXIT_INCONCLUSIVE };
    Report { json, lines, exit }
}

pub fn roundtrip_report<K: Field>(
    xname: &str,
    tname: &str,
    rep: &cotilt_core::foxby::RoundtripReport<K>,
) -> Report {
    let class = rep.start.class.to_string().to_lowercase();
    let json = json!({
        "command": "foxby-roundtrip",
        "module": xname,
        "bimodule": tname,
        "class": class,
        "member": verdict(rep.start.member, rep.start.status),
        "image_dims": rep.image.dims_label(),
        "image_member": verdict(rep.image_membership.member, rep.image_membership.status),
        "returned_iso": verdict(Some(rep.returned_iso), CertStatus::Certified),
    });
    let lines = vec![
        format!("foxby roundtrip of {xname} through {tname} ({class} side)"),
        format!("member: {}", fmt_verdict(rep.start.member, rep.start.status)),
        format!("image dims: {}", rep.image.dims_label()),
        format!(
            "image in the opposite class: {}",
            fmt_verdict(rep.image_membership.member, rep.image_membership.status)
        ),
        format!("returns isomorphically: {}", rep.returned_iso),
    ];
    // A certified member that fails to return would contradict the
    // correspondence, so that counts as a refutation.
    let exit = if rep.returned_iso {
        EXIT_OK
    } else if rep.start.member == Some(true) && rep.start.status == CertStatus::Certified {
        EXIT_REFUTED
    } else {
        EXIT_INCONCLUSIVE
    };
    Report { json, lines, exit }
}

/// The non-member variant of the roundtrip: reported, not attempted.
pub fn roundtrip_refused(xname: &str, tname: &str, class: &str, rep: &ClassMembership) -> Report {
    let json = json!({
        "command": "foxby-roundtrip",
        "module": xname,
        "bimodule": tname,
        "class": class,
        "member": verdict(rep.member, rep.status),
        "returned_iso": Value::Null,
    });
    let lines = vec![
        format!("foxby roundtrip of {xname} through {tname} ({class} side)"),
        format!("member: {}", fmt_verdict(rep.member, rep.status)),
        "not a member; the roundtrip is not defined".to_string(),
    ];
    Report { json, lines, exit: EXIT_OK }
}

fn case_class_str(c: CaseClass) -> &'static str {
    match c {
        CaseClass::Consistent => "consistent",
        CaseClass::Mismatch => "mismatch",
        CaseClass::Inconclusive => "inconclusive",
    }
}

pub fn verify_report(out: &TheoremOutcome) -> Report {
    let hyps: Vec<Value> = out
        .hypotheses
        .iter()
        .map(|h| json!({ "label": h.label, "value": h.holds, "status": status_str(h.status) }))
        .collect();
    let cases: Vec<Value> = out
        .cases
        .iter()
        .map(|c| {
            let verdicts: Vec<Value> = c
                .verdicts
                .iter()
                .map(|v| json!({ "label": v.label, "value": v.value, "status": status_str(v.status) }))
                .collect();
            json!({
                "label": c.label,
                "class": case_class_str(c.class),
                "verdicts": verdicts,
                "detail": c.detail,
            })
        })
        .collect();
    let json = json!({
        "command": "verify",
        "theorem": out.id,
        "summary": out.summary,
        "exploratory": out.exploratory,
        "hypotheses": hyps,
        "cases": cases,
        "mismatches": out.mismatches,
        "inconclusive": out.inconclusive,
    });

    let mut lines = vec![format!("verify {}: {}", out.id, out.summary)];
    if !out.hypotheses.is_empty() {
        lines.push("hypotheses:".to_string());
        for h in &out.hypotheses {
            lines.push(format!("  {}: {}", h.label, fmt_verdict(h.holds, h.status)));
        }
    }
    if out.exploratory {
        lines.push("exploratory run: a hypothesis is not established, mismatches carry no weight".into());
    }
    lines.push(format!(
        "cases: {} total, {} mismatches, {} inconclusive",
        out.cases.len(),
        out.mismatches,
        out.inconclusive
    ));
    for c in &out.cases {
        match c.class {
            CaseClass::Consistent => lines.push(format!("  ok  {}", c.label)),
            _ => {
                lines.push(format!("  {}  {}", case_class_str(c.class), c.label));
                for v in &c.verdicts {
                    lines.push(format!("        {}: {}", v.label, fmt_verdict(v.value, v.status)));
                }
                if !c.detail.is_empty() {
                    lines.push(format!("        detail: {}", c.detail));
                }
            }
        }
    }
    let exit = if !out.exploratory && out.mismatches > 0 {
        EXIT_REFUTED
    } else if out.inconclusive > 0 {
        EXIT_INCONCLUSIVE
    } else {
        EXIT_OK
    };
    lines.push(format!(
        "result: {}",
        match exit {
            EXIT_REFUTED => "mismatch",
            EXIT_INCONCLUSIVE => "inconclusive",
            _ => "consistent",
        }
    ));
    Report { json, lines, exit }
}
