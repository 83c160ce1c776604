//! Regenerate the committed fixture documents.

use catkit::base::BaseKind;
use catkit::diagram::diagonal;
use catkit::fixtures;
use catkit::io::{serialize, Entity, SpecDocument};

fn main() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(&dir).unwrap();

    // Z/2 acting on Z/3 by inversion (finset)
    let mut doc = SpecDocument::new(BaseKind::FinSet);
    doc.push("Z2", Entity::Index(fixtures::cyclic_group_cat(2)));
    doc.push("Z3", Entity::Category(fixtures::zn_as_vcat(3)));
    doc.push(
        "X",
        Entity::Oplax {
            index: "Z2".into(),
            on_objects: vec!["Z3".into()],
            diagram: fixtures::z2_on_z3(),
        },
    );
    std::fs::write(dir.join("z2-on-z3.cat"), serialize(&doc)).unwrap();

    // the constant diagram on F_2[Z/2] over the arrow category
    let mut doc = SpecDocument::new(BaseKind::FinVect { prime: 2 });
    let a = fixtures::group_algebra(2, 2);
    doc.push("I", Entity::Index(fixtures::arrow_category()));
    doc.push("A", Entity::Category(a.clone()));
    doc.push(
        "X",
        Entity::Oplax {
            index: "I".into(),
            on_objects: vec!["A".into(), "A".into()],
            diagram: diagonal(&a, &fixtures::arrow_category()),
        },
    );
    std::fs::write(dir.join("arrow-delta.cat"), serialize(&doc)).unwrap();

    // F_2[Z/2] with its canonical grading
    let mut doc = SpecDocument::new(BaseKind::FinVect { prime: 2 });
    let g = fixtures::f2_z2_graded();
    doc.push("Z2", Entity::Index(fixtures::cyclic_group_cat(2)));
    doc.push("A", Entity::Category(g.cat.clone()));
    doc.push(
        "mu",
        Entity::Grading {
            category: "A".into(),
            index: "Z2".into(),
            grading: g,
        },
    );
    std::fs::write(dir.join("f2z2-graded.cat"), serialize(&doc)).unwrap();

    // a non-strict diagram on the terminal category
    let mut doc = SpecDocument::new(BaseKind::FinVect { prime: 2 });
    doc.push("T", Entity::Index(fixtures::terminal_category()));
    doc.push("A", Entity::Category(fixtures::group_algebra(2, 2)));
    doc.push(
        "X",
        Entity::Oplax {
            index: "T".into(),
            on_objects: vec!["A".into()],
            diagram: fixtures::twisted_terminal_diagram(),
        },
    );
    std::fs::write(dir.join("twisted.cat"), serialize(&doc)).unwrap();

    // a deliberately corrupted diagram: the θ_{g1,g1} cell points at g1
    let text = std::fs::read_to_string(dir.join("z2-on-z3.cat")).unwrap();
    let corrupt = text.replace(
        "\"g1|g1\": {\n          \"*\": {\n            \"elem\": \"g0\"",
        "\"g1|g1\": {\n          \"*\": {\n            \"elem\": \"g1\"",
    );
    assert_ne!(text, corrupt, "corruption pattern must match");
    std::fs::write(dir.join("corrupt.cat"), corrupt).unwrap();

    println!("fixtures written to {}", dir.display());
}
