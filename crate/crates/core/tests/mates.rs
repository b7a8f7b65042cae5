use chring::mates::corpus_signature;
use chring::mates::*;

fn square() -> Signature {
    corpus_signature("section-4", "square").unwrap()
}

fn gen(sig: &Signature, name: &str) -> Term {
    sig.generator(sig.cell(name).unwrap())
}

#[test]
fn mate_is_the_literal_composite() {
    let sig = square();
    let m = mate(&sig, &gen(&sig, "alpha")).unwrap();
    assert_eq!(sig.render(&m), "eta_H L U_G ; U_H alpha U_G ; U_H L' eps_G");
    assert_eq!(sig.render_boundary(&m).unwrap(), "L U_G => U_H L'");
    let b = mate(&sig, &gen(&sig, "beta")).unwrap();
    assert_eq!(sig.render(&b), "F_H L eta_G ; F_H beta F_G ; eps_H L' F_G");
    assert_eq!(sig.render_boundary(&b).unwrap(), "F_H L => L' F_G");
}

#[test]
fn mate_rejects_foreign_boundaries() {
    let sig = square();
    assert!(mate(&sig, &gen(&sig, "lam")).is_err());
}

#[test]
fn triangle_identities_are_one_step_each_way() {
    let sig = square();
    for rule in sig
        .rules
        .iter()
        .filter(|r| r.origin == Origin::TriangleIdentity)
    {
        for (a, b) in [(&rule.lhs, &rule.rhs), (&rule.rhs, &rule.lhs)] {
            let mut p = Prover::new(&sig);
            let Decision::Equal(proof) = p.decide(a, b, 8).unwrap() else {
                panic!("{}", rule.name)
            };
            assert_eq!(proof.rewrite_steps(), 1);
            assert!(p.replay(&proof, b));
        }
    }
}

#[test]
fn involution_is_exhaustively_provable() {
    let r = mate_involution_exhaustive(3, 8).unwrap();
    assert!(r.passed, "{:?}", r.failures);
    assert!(r.checked >= 18);
    let r = mate_involution_exhaustive(4, 8).unwrap();
    assert!(r.passed, "{:?}", r.failures);
}

#[test]
fn decisions_are_symmetric_and_replay() {
    let sig = square();
    let r = mate_involution_exhaustive(2, 8).unwrap();
    assert!(r.passed);
    let cells: Vec<Id> = (0..sig.cells.len()).collect();
    let src = sig
        .identity(
            vec![sig.functor("F_H").unwrap(), sig.functor("L").unwrap()],
            None,
        )
        .unwrap();
    let tgt = vec![sig.functor("L'").unwrap(), sig.functor("F_G").unwrap()];
    let terms = enumerate_terms(&sig, &src, &tgt, &cells, 3);
    for a in &terms {
        for b in &terms {
            let mut p = Prover::new(&sig);
            let ab = p.decide(a, b, 4).unwrap();
            let ba = p.decide(b, a, 4).unwrap();
            assert_eq!(
                ab.is_equal(),
                ba.is_equal(),
                "{} vs {}",
                sig.render(a),
                sig.render(b)
            );
            if let Decision::Equal(proof) = ab {
                assert!(p.replay(&proof, b));
            }
        }
    }
}

#[test]
fn false_pair_is_never_proved() {
    let sig = corpus_signature("section-4", "identity-adjunction").unwrap();
    let x = sig.category("X").unwrap();
    let eta = gen(&sig, "eta_id");
    let id = sig.identity(vec![], Some(x)).unwrap();
    for depth in [0, 1, 4, 8, 12] {
        assert!(!decide_equal(&sig, &eta, &id, depth).unwrap().is_equal());
    }
}

#[test]
fn tampered_proofs_do_not_replay() {
    let sig = square();
    let a = gen(&sig, "alpha");
    let mm = mate(&sig, &mate(&sig, &a).unwrap()).unwrap();
    let mut p = Prover::new(&sig);
    let Decision::Equal(mut proof) = p.decide(&mm, &a, 8).unwrap() else {
        panic!()
    };
    assert!(p.replay(&proof, &a));
    let lam = gen(&sig, "lam");
    assert!(!p.replay(&proof, &lam));
    if let Some(ProofStep::Rewrite { offset, .. }) = proof
        .steps
        .iter_mut()
        .find(|s| matches!(s, ProofStep::Rewrite { .. }))
    {
        *offset += 1;
    }
    assert!(!p.replay(&proof, &a));
}

#[test]
fn builtin_corpora_pass_at_default_depth() {
    for name in builtin_corpus_names() {
        let r = verify_corpus(name, DEFAULT_DEPTH).unwrap();
        assert!(
            r.passed,
            "{name}: {:?}",
            r.diagrams
                .iter()
                .filter(|d| !d.passed)
                .map(|d| &d.name)
                .collect::<Vec<_>>()
        );
        for d in &r.diagrams {
            if d.verdict == Expect::Equal {
                assert_eq!(d.replayed, Some(true));
                assert_eq!(
                    d.trace
                        .iter()
                        .filter(|t| t.origin != Origin::Interchange)
                        .count(),
                    d.rewrite_steps.unwrap()
                );
            }
        }
    }
    assert!(verify_corpus("nope", 8).is_err());
}

#[test]
fn section_4_involution_at_depth_6() {
    let r = verify_corpus("section-4", 6).unwrap();
    let d = r
        .diagrams
        .iter()
        .find(|d| d.name == "mate involution on alpha")
        .unwrap();
    assert!(d.passed);
}

#[test]
fn failures_report_normal_forms() {
    let text = r#"{"name": "t", "signatures": {"s": {
        "categories": ["C"],
        "functors": [{"name": "F", "source": "C", "target": "C"}],
        "cells": [{"name": "x", "source": ["F"], "target": ["F"]}, {"name": "y", "source": ["F"], "target": ["F"]}]}},
        "diagrams": [{"name": "x=y", "signature": "s", "lhs": {"layers": [{"cell": "x"}]}, "rhs": {"layers": [{"cell": "y"}]}}]}"#;
    let r = verify_corpus_text(text, 8).unwrap();
    assert!(!r.passed);
    assert_eq!(
        r.diagrams[0].unmatched,
        Some(("x".to_string(), "y".to_string()))
    );
}

#[test]
fn ill_typed_terms_are_rejected() {
    let text = r#"{"name": "t", "signatures": {"s": {
        "categories": ["C", "D"],
        "functors": [{"name": "F", "source": "C", "target": "D"}, {"name": "G", "source": "C", "target": "D"}],
        "cells": [{"name": "x", "source": ["F"], "target": ["G"]}]}},
        "diagrams": [{"name": "bad", "signature": "s", "lhs": {"layers": [{"cell": "x"}, {"cell": "x"}]}, "rhs": {"source": ["F"], "layers": []}}]}"#;
    assert!(verify_corpus_text(text, 8).is_err());
    let text = text.replace(r#"{"cell": "x"}, {"cell": "x"}"#, r#"{"cell": "x"}"#);
    assert!(verify_corpus_text(&text, 8).is_err());
}
