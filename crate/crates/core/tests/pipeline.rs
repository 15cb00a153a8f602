//! Whole-pipeline checks through the public API.

use num_bigint::BigUint;

use altquot::permgroup::{evaluate_word, factorial};
use altquot::separation::{separate, traced_graph, verify_certificate, Mode, ProblemInstance};
use altquot::words::Sign;
use altquot::{Classification, Word};

fn instance(rank: usize, subgroup: &[&str], elements: &[&str], mode: Mode) -> ProblemInstance {
    ProblemInstance {
        rank,
        subgroup: subgroup.iter().map(|t| Word::parse(t, rank).unwrap()).collect(),
        elements: elements.iter().map(|t| Word::parse(t, rank).unwrap()).collect(),
        mode,
    }
}

#[test]
fn rank_three_alternating_certificate() {
    let inst = instance(3, &["ab", "ca", "bcb"], &["c", "abc"], Mode::Alternating);
    let cert = separate(&inst).unwrap();
    let group = cert.group.as_ref().unwrap();
    assert_eq!(group.classification, Classification::Alternating);
    assert_eq!(&group.order * 2u32, factorial(cert.degree));
    assert!(cert.generator_images.iter().all(|p| p.sign() == Sign::Plus));
    assert!(verify_certificate(&inst, &cert).passed());

    // The base point identifies the subgroup: products of generators fix it,
    // and each listed element escapes it.
    for check in &cert.subgroup_checks {
        assert!(check.fixes_base);
    }
    for check in &cert.element_checks {
        assert!(check.moves_base);
    }
}

#[test]
fn symmetric_and_alternating_share_the_degree() {
    let alternating = instance(2, &["aab"], &["ba"], Mode::Alternating);
    let symmetric = instance(2, &["aab"], &["ba"], Mode::Symmetric);
    let alt_cert = separate(&alternating).unwrap();
    let sym_cert = separate(&symmetric).unwrap();
    assert_eq!(alt_cert.degree, sym_cert.degree);
    let degree = alt_cert.degree;
    assert_eq!(
        &alt_cert.group.as_ref().unwrap().order * 2u32,
        sym_cert.group.as_ref().unwrap().order
    );
    assert_eq!(sym_cert.group.as_ref().unwrap().order, factorial(degree));
}

#[test]
fn hall_cover_separates_on_the_traced_graph() {
    let inst = instance(2, &["abAB"], &["a", "b", "abA"], Mode::Hall);
    let traced = traced_graph(&inst).unwrap();
    let cert = separate(&inst).unwrap();
    assert_eq!(cert.degree, traced.vertex_count());
    assert!(cert.group.is_none());
    assert!(cert.sign_vector.is_none());
    assert!(verify_certificate(&inst, &cert).passed());

    // Conjugates of subgroup generators by subgroup elements stay in the
    // stabiliser of the base.
    let h = &inst.subgroup[0];
    let conjugate = h.concat(h).concat(&h.inverse());
    let image = evaluate_word(&cert.generator_images, &conjugate).unwrap();
    assert_eq!(image.apply(cert.base), cert.base);
}

#[test]
fn modes_agree_on_membership_rejections() {
    for mode in [Mode::Hall, Mode::Alternating, Mode::Symmetric] {
        let inst = instance(2, &["ab", "ba"], &["ab"], mode);
        assert!(separate(&inst).is_err());
    }
}

#[test]
fn big_degree_orders_stay_exact() {
    // A subgroup whose traced graph is large enough that the cover degree
    // pushes the order beyond u64.
    let inst = instance(
        2,
        &["abababab", "babababa", "aabb"],
        &["abba", "baab"],
        Mode::Alternating,
    );
    let cert = separate(&inst).unwrap();
    let group = cert.group.as_ref().unwrap();
    assert!(cert.degree >= 21, "degree {} too small for the check", cert.degree);
    assert_eq!(&group.order * 2u32, factorial(cert.degree));
    assert!(group.order > BigUint::from(u64::MAX));
    assert!(verify_certificate(&inst, &cert).passed());
}
