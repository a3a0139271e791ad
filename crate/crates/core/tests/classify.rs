use mutata::classify::families::Shape;
use mutata::classify::Certificate;
use mutata::explore::CertificateKind;
use mutata::{
    affine_recognize, classify, classify_acyclic, generate_family, is_finite_type, is_minimal_infinite, mutate_diagram,
    realize_matrix, Caps, Diagram, ExchangeMatrix, FamilyKind, VerdictKind,
};

fn caps() -> Caps {
    Caps::default()
}

fn type_name(kind: &VerdictKind) -> String {
    match kind {
        VerdictKind::FiniteType(l) | VerdictKind::Affine(l) => l.type_name(),
        other => format!("{other:?}"),
    }
}

#[test]
fn linear_a3_is_finite_type() {
    let b = ExchangeMatrix::new(vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]).unwrap();
    let v = is_finite_type(&b, &caps()).unwrap();
    assert_eq!(type_name(&v.kind), "A_3");
    assert!(v.verify(&b).unwrap());
}

#[test]
fn oriented_triangle_is_finite_type_a3() {
    let g = Diagram::from_triples(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
    let b = realize_matrix(&g).unwrap();
    let v = classify(&b, &caps()).unwrap();
    assert_eq!(type_name(&v.kind), "A_3");
    let path = v
        .certificates
        .iter()
        .find_map(|c| match c {
            Certificate::MutationPath { path, .. } => Some(path.clone()),
            _ => None,
        })
        .unwrap();
    assert_eq!(path.len(), 1);
    assert!(v.verify(&b).unwrap());
}

#[test]
fn star_is_affine_d4() {
    let g = Diagram::from_triples(5, &[(1, 0, 1), (2, 0, 1), (0, 3, 1), (0, 4, 1)]).unwrap();
    let b = realize_matrix(&g).unwrap();
    let v = affine_recognize(&b, &caps()).unwrap();
    assert_eq!(type_name(&v.kind), "D_4^{(1)}");
    let full = classify(&b, &caps()).unwrap();
    assert_eq!(type_name(&full.kind), "D_4^{(1)}");
    assert_eq!(full.minimal_infinite, Some(true));
    assert!(full.verify(&b).unwrap());
}

#[test]
fn five_vertex_minimal_family_member_is_minimal_infinite() {
    for g in generate_family(Shape::MinDr { r: 3 }).unwrap() {
        let v = is_minimal_infinite(&g, &caps()).unwrap();
        assert_eq!(v.kind, VerdictKind::MinimalInfinite);
        // It lies in the affine class of D_4^{(1)}, so the full verdict is affine.
        let c = classify(&realize_matrix(&g).unwrap(), &caps()).unwrap();
        assert_eq!(type_name(&c.kind), "D_4^{(1)}");
        assert_eq!(c.minimal_infinite, Some(true));
    }
}

#[test]
fn weight_five_pair_is_minimal_infinite() {
    let b = ExchangeMatrix::new(vec![vec![0, 1], vec![-5, 0]]).unwrap();
    let v = classify(&b, &caps()).unwrap();
    assert_eq!(v.kind, VerdictKind::MinimalInfinite);
}

#[test]
fn critical_d4_is_not_affine() {
    for g in generate_family(Shape::CritD4 { m: 1 }).unwrap() {
        let b = realize_matrix(&g).unwrap();
        let v = affine_recognize(&b, &caps()).unwrap();
        assert_eq!(v.kind, VerdictKind::Rejected);
        assert!(v.certificates.iter().any(|c| matches!(c, Certificate::Occurrence { .. })));
        let full = classify(&b, &caps()).unwrap();
        assert_eq!(full.kind, VerdictKind::OtherInfinite, "{:?}", full);
    }
}

#[test]
fn acyclic_trees() {
    // E_6^{(1)} is affine, a star with five leaves is not.
    let e6 = generate_family(Shape::AffE(6)).unwrap();
    let v = classify_acyclic(&e6[0], &caps()).unwrap();
    assert_eq!(type_name(&v.kind), "E_6^{(1)}");
    assert_eq!(v.finite_mutation_class, Some(true));
    let star = Diagram::from_triples(6, &[(0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 4, 1), (0, 5, 1)]).unwrap();
    let v = classify_acyclic(&star, &caps()).unwrap();
    assert_eq!(v.kind, VerdictKind::OtherInfinite);
    assert_eq!(v.finite_mutation_class, Some(false));
    match &v.certificates[0] {
        Certificate::Infinitude { certificate } => assert!(certificate.verify(&star)),
        other => panic!("unexpected certificate {other:?}"),
    }
}

#[test]
fn acyclic_rejects_cycles() {
    let g = Diagram::from_triples(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
    assert!(classify_acyclic(&g, &caps()).is_err());
}

#[test]
fn critical_center_mutation_loses_admissibility() {
    // Two arrows into the center and two out of it.
    let g = generate_family(Shape::CritD4 { m: 1 })
        .unwrap()
        .into_iter()
        .find(|g| {
            (0..5).any(|v| {
                let out = (0..5).filter(|&u| g.has_arrow(v, u)).count();
                let inc = (0..5).filter(|&u| g.has_arrow(u, v)).count();
                out == 2 && inc == 2
            })
        })
        .unwrap();
    let center = (0..5).find(|&v| (0..5).filter(|&u| g.adjacent(v, u)).count() == 4).unwrap();
    let mutated = mutate_diagram(&g, center);
    assert!(mutata::find_admissible(&g).unwrap().is_some());
    assert!(mutata::find_admissible(&mutated).unwrap().is_none());
}

#[test]
fn weight_four_certificate_kind() {
    let g = Diagram::from_triples(3, &[(0, 1, 5), (1, 2, 1)]).unwrap();
    let c = mutata::infinitude_certificate(&g, &caps()).unwrap().unwrap();
    assert_eq!(c.kind, CertificateKind::WeightOver4);
    let _ = FamilyKind::Critical;
}
