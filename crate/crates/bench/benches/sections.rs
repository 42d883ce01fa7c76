use criterion::{black_box, criterion_group, criterion_main, Criterion};

use quermass_core::linearization::proposition_integral;
use quermass_core::quermass::{quermass_all, section_volume};
use quermass_core::sphere::quasi_uniform_directions;
use quermass_core::steiner::{steiner_fit, SteinerOptions};
use quermass_core::sweep::offset_profile;
use quermass_core::{Direction, Section, SmoothSphereFunction, StarBody, Vector};

fn ellipsoid(d: usize) -> StarBody {
    let axes: Vec<f64> = (0..d).map(|i| 1.0 - 0.1 * i as f64).collect();
    StarBody::ellipsoid(&axes).unwrap()
}

fn tilted(d: usize) -> Direction {
    let v: Vec<f64> = (0..d).map(|i| 1.0 + i as f64).collect();
    Direction::normalize(Vector::from_slice(&v).unwrap()).unwrap()
}

fn sections(c: &mut Criterion) {
    for d in [3, 4] {
        let body = ellipsoid(d);
        let pole = tilted(d);
        let section = Section::new(&body, &pole, 0.2).unwrap();
        c.bench_function(&format!("section_volume d={d}"), |b| {
            b.iter(|| section_volume(black_box(&section)).unwrap())
        });
        c.bench_function(&format!("quermass_all d={d}"), |b| b.iter(|| quermass_all(black_box(&section)).unwrap()));
    }
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("steiner");
    group.sample_size(10);
    for d in [3, 4] {
        let body = ellipsoid(d);
        let pole = tilted(d);
        let section = Section::new(&body, &pole, 0.2).unwrap();
        let options = SteinerOptions::for_dim(d);
        group.bench_function(format!("fit d={d}"), |b| b.iter(|| steiner_fit(black_box(&section), &options).unwrap()));
    }
    group.finish();
}

fn profiles(c: &mut Criterion) {
    let mut group = c.benchmark_group("profile");
    group.sample_size(10);
    let body = ellipsoid(3);
    let pole = tilted(3);
    group.bench_function("d=3 l=1 201 offsets", |b| b.iter(|| offset_profile(&body, &pole, 1, 201).unwrap()));
    group.finish();
}

fn equator_integrals(c: &mut Criterion) {
    let f = SmoothSphereFunction::linear(&Vector::from_slice(&[0.2, -0.4, 0.8, 0.1]).unwrap())
        .pow(3)
        .unwrap();
    let poles = quasi_uniform_directions(4, 64, 0).unwrap();
    c.bench_function("proposition_integral d=4 x64 poles", |b| {
        b.iter(|| poles.iter().map(|p| proposition_integral(&f, p, 48).unwrap().value).sum::<f64>())
    });
}

criterion_group!(benches, sections, oracle, profiles, equator_integrals);
criterion_main!(benches);
