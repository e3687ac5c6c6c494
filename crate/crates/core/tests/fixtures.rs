//! The files under `fixtures/` must match fresh constructions byte for byte.
//! Run with `GRL_BLESS=1` to rewrite them after an intentional change.

use std::fs;
use std::path::PathBuf;

use grl_core::catalog;
use grl_core::fixture::{self, AlgebraFixture, CrossedFixture, Fixture, SkewFixture};
use grl_core::Field;

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn expected() -> Vec<(&'static str, String)> {
    let q = Field::Rational;
    let gf2 = Field::Prime(2);
    let rex_q = catalog::rex(q);
    // e12 e21 = e11 removed: associativity and the strong grading both break.
    let i = rex_q.basis_index("e12").unwrap();
    let j = rex_q.basis_index("e21").unwrap();
    let k = rex_q.basis_index("e11").unwrap();
    let broken = rex_q.without_constant(i, j, k).unwrap();
    vec![
        ("g2.json", fixture::to_json(&catalog::g2().to_fixture())),
        ("z2.json", fixture::to_json(&catalog::z2().to_fixture())),
        ("rex-q.json", fixture::to_json(&AlgebraFixture::from_graded(&rex_q))),
        ("rex-gf2.json", fixture::to_json(&AlgebraFixture::from_graded(&catalog::rex(gf2)))),
        ("broken-rex-q.json", fixture::to_json(&AlgebraFixture::from_graded(&broken))),
        ("kz2-q.json", fixture::to_json(&AlgebraFixture::from_graded(&catalog::kz2(q)))),
        ("kz2-gf2.json", fixture::to_json(&AlgebraFixture::from_graded(&catalog::kz2(gf2)))),
        ("skew-swap-gf2.json", fixture::to_json(&SkewFixture::from_system(&catalog::skew_swap(gf2)))),
        ("groupalg-gf2.json", fixture::to_json(&SkewFixture::from_system(&catalog::skew_group_algebra(gf2)))),
        (
            "crossed-twist-q.json",
            fixture::to_json(&CrossedFixture::from_system(&catalog::crossed_scalar_twist(q, -1))),
        ),
        (
            "crossed-degenerate-q.json",
            fixture::to_json(&CrossedFixture::from_system(&catalog::crossed_scalar_twist(q, 0))),
        ),
    ]
}

#[test]
fn bundled_fixtures_match_constructions() {
    let bless = std::env::var("GRL_BLESS").is_ok_and(|v| v == "1");
    for (name, text) in expected() {
        let path = dir().join(name);
        if bless {
            fs::write(&path, &text).unwrap();
            continue;
        }
        let on_disk = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(on_disk, text, "{name} differs from a fresh construction");
    }
}

#[test]
fn bundled_fixtures_reload_and_reserialize_identically() {
    for (name, _) in expected() {
        let Ok(text) = fs::read_to_string(dir().join(name)) else { continue };
        let fx = fixture::parse(&text).unwrap();
        let again = match &fx {
            Fixture::Algebra(f) => fixture::to_json(&AlgebraFixture::from_graded(&f.to_graded().unwrap())),
            Fixture::Skew(f) => fixture::to_json(&SkewFixture::from_system(&f.to_system().unwrap())),
            Fixture::Crossed(f) => fixture::to_json(&CrossedFixture::from_system(&f.to_system().unwrap())),
            Fixture::Groupoid(f) => {
                fixture::to_json(&grl_core::Groupoid::from_fixture(f).unwrap().to_fixture())
            }
        };
        assert_eq!(again, text, "{name} does not round-trip");
    }
}
