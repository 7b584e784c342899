use std::fmt::Write;

use qlogic::cloning::SearchStatus;

use crate::report::*;

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "none".into()
    } else {
        items.join(", ")
    }
}

fn pairs(items: &[(String, String)]) -> String {
    if items.is_empty() {
        "none".into()
    } else {
        items.iter().map(|(p, q)| format!("({p}, {q})")).collect::<Vec<_>>().join(", ")
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub(crate) fn render(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let w = &mut out;
    match &doc.result {
        CommandResult::Validate(r) => match (&r.violation, r.size) {
            (None, Some(size)) => writeln!(w, "valid effect algebra with {size} elements").unwrap(),
            (Some(v), _) => writeln!(w, "invalid: {} ({})", v.message, v.kind).unwrap(),
            (None, None) => writeln!(w, "invalid").unwrap(),
        },
        CommandResult::Analyze(r) => {
            writeln!(w, "elements:             {}", r.size).unwrap();
            writeln!(w, "orthoalgebra:         {}", yes_no(r.is_orthoalgebra)).unwrap();
            writeln!(w, "orthomodular poset:   {}", yes_no(r.is_orthomodular_poset)).unwrap();
            writeln!(w, "coherent:             {}", yes_no(r.is_coherent)).unwrap();
            writeln!(w, "Boolean:              {}", yes_no(r.is_boolean)).unwrap();
            writeln!(w, "atomic:               {}", yes_no(r.is_atomic)).unwrap();
            writeln!(w, "Archimedean:          {}", yes_no(r.is_archimedean)).unwrap();
            writeln!(w, "atoms:                {}", list(&r.atoms)).unwrap();
            writeln!(w, "sharp elements:       {}", list(&r.sharp_elements)).unwrap();
            let iota: Vec<String> = r.iota.iter().map(|(p, i)| format!("{p}:{i}")).collect();
            writeln!(w, "isotropic indices:    {}", list(&iota)).unwrap();
            writeln!(w, "incompatible pairs:   {}", pairs(&r.incompatible_pairs)).unwrap();
        }
        CommandResult::CloneSearch(r) => {
            let status = match r.status {
                SearchStatus::WitnessFound => "witness found",
                SearchStatus::NoWitness => "no witness exists",
                SearchStatus::Aborted => "aborted: node budget exhausted",
            };
            writeln!(w, "{status} ({} nodes)", r.nodes_explored).unwrap();
            for (i, witness) in r.witnesses.iter().enumerate() {
                writeln!(w, "witness {} ({}):", i + 1, if r.symmetric[i] { "symmetric" } else { "asymmetric" }).unwrap();
                for [p, q, c] in &witness.witness {
                    writeln!(w, "  c({p}, {q}) = {c}").unwrap();
                }
            }
            if let Some(l) = &r.lemmas {
                let ok = l.zero_iff_orthogonal_violations.is_empty() && l.idempotence_violations.is_empty();
                writeln!(w, "lemma checks on {} witnesses: {}", l.witnesses_checked, if ok { "pass" } else { "FAIL" })
                    .unwrap();
            }
            if let Some(note) = &r.interpretation_note {
                writeln!(w, "note: {note}").unwrap();
            }
        }
        CommandResult::States(r) => {
            if r.empty {
                writeln!(w, "the algebra has no states").unwrap();
            } else {
                writeln!(w, "{} vertex states, dimension {}", r.vertex_count, r.dimension.unwrap_or(0)).unwrap();
                for (i, v) in r.vertices.iter().enumerate() {
                    let cells: Vec<String> = v.iter().map(|(k, x)| format!("{k}={x}")).collect();
                    writeln!(w, "  ω{}: {}", i + 1, cells.join(" ")).unwrap();
                }
                writeln!(w, "separating: {}", yes_no(r.separating)).unwrap();
                if !r.merged_pairs.is_empty() {
                    writeln!(w, "merged pairs: {}", pairs(&r.merged_pairs)).unwrap();
                }
            }
        }
        CommandResult::Hidden(r) => {
            let status = match r.status {
                HiddenStatus::Verified => "hidden-variable model verified",
                HiddenStatus::HypothesisUnmet => "hypothesis unmet",
                HiddenStatus::ConstructionFailed => "construction failed",
                HiddenStatus::VerificationFailed => "verification failed",
            };
            writeln!(w, "{status}").unwrap();
            writeln!(w, "decomposition: {}", list(&r.decomposition)).unwrap();
            if let Some(reason) = &r.reason {
                writeln!(w, "reason: {reason}").unwrap();
            }
            if let Some(model) = &r.model {
                for (x, coords) in &model.h {
                    writeln!(w, "  h({x}) = ({})", coords.join(", ")).unwrap();
                }
            }
            if let Some(v) = &r.verification {
                writeln!(
                    w,
                    "lifted {} vertex states and {} mixtures (seed {}): {} violations",
                    v.vertex_states,
                    v.mixtures,
                    v.seed,
                    v.violations.len()
                )
                .unwrap();
                for line in &v.violations {
                    writeln!(w, "  {line}").unwrap();
                }
            }
            writeln!(w, "interpretation: {}", r.interpretation).unwrap();
        }
        CommandResult::Catalog(r) => writeln!(w, "wrote {} ({} elements) to {}", r.spec, r.size, r.output).unwrap(),
        CommandResult::Error(e) => writeln!(w, "{} error: {}", e.category, e.message).unwrap(),
    }
    out
}
