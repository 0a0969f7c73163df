//! `parse(emit(M)) = M`, byte for byte, across the catalogs.

use matx_core::catalog::{catalog_generate, CatalogSpec};
use matx_core::format::Body;
use matx_core::{emit_matroid, parse_matroid, MatroidFile};

#[test]
fn catalogs_round_trip() {
    let mut specs = vec![
        CatalogSpec::exhaustive(1, 6),
        CatalogSpec::exhaustive(2, 6),
        CatalogSpec::exhaustive(3, 6),
    ];
    specs.push(CatalogSpec::constructed(2, 8));
    specs.push(CatalogSpec::constructed(3, 8));
    let mut seen = 0;
    for spec in &specs {
        for (name, m) in catalog_generate(spec).unwrap() {
            let text = emit_matroid(&m);
            let back = parse_matroid(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(back, m, "{name}");
            assert_eq!(emit_matroid(&back), text, "{name}");
            assert_eq!(back.content_hash(), m.content_hash());
            seen += 1;
        }
    }
    assert!(seen > 150);
}

#[test]
fn graph_and_matrix_bodies_round_trip() {
    let graph = "matroid v1\nkind graph\nvertices 4\nedges 1-2 1-3 1-4 2-3 2-4 3-4\n";
    let matrix = "matroid v1\nkind matrix\nprime 3\nrows 2\ncols 4\n1 0 1 1\n0 1 1 2\n";
    for text in [graph, matrix] {
        let file = MatroidFile::parse(text).unwrap();
        assert_eq!(file.emit(), text);
        assert_eq!(MatroidFile::parse(&file.emit()).unwrap().body, file.body);
    }
    assert!(matches!(MatroidFile::parse(graph).unwrap().body, Body::Graph { vertices: 4, .. }));
    // the ternary matrix above has four pairwise independent columns
    let m = parse_matroid(matrix).unwrap();
    assert_eq!(m.basis_count(), 6);
    assert_eq!(parse_matroid(graph).unwrap().basis_count(), 16);
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let text = "# header comment\nmatroid v1\n\nkind bases # inline\nn 3\nr 1\n1\n2\n";
    let m = parse_matroid(text).unwrap();
    assert_eq!(m.ground_size(), 3);
    assert_eq!(m.basis_count(), 2);
    assert_eq!(m.loops().to_one_based(), vec![3]);
}
