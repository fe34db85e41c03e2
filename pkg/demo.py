#!/usr/bin/env python3
"""
Demo script for the dynamic vertex-sparsifier toolkit.
Walks through each subsystem on small instances.
"""

import math


def demo_rdivision():
    """Demonstrate r-division construction and validation."""
    print("🧩 r-Division Demo")
    print("-" * 30)

    try:
        from src.partition import build_rdivision, validate_rdivision
        from src.utils.generators import grid_graph

        graph = grid_graph(64).graph
        division = build_rdivision(graph, r=16, seed=0)
        report = validate_rdivision(division, graph)

        print(f"✓ Built a division of the 8 x 8 grid with r = 16")
        print(f"📊 Regions: {report.region_count}, boundary vertices: {report.boundary_vertices}")
        print(f"📊 Largest region: {report.max_region_size} vertices")
        print(f"✓ Validator passed: {report.passed}")
        return True

    except Exception as e:
        print(f"❌ r-division demo failed: {e}")
        return False


def demo_schur():
    """Demonstrate exact Schur complements and effective resistance."""
    print("⚡ Schur Complement Demo")
    print("-" * 30)

    try:
        from src.graph import WeightedGraph
        from src.solvers import effective_resistance
        from src.sparsify import exact_schur

        path = WeightedGraph.from_edges(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)])
        schur = exact_schur(path, [0, 3])
        edge = next(schur.graph.edges())

        print(f"✓ Eliminated the interior of a 4-vertex path")
        print(f"📊 Terminal edge conductance: {edge.weight:.4f} (expected 1/3)")
        print(f"📊 R(0, 3) = {effective_resistance(path, 0, 3):.4f} (expected 3)")
        return True

    except Exception as e:
        print(f"❌ Schur demo failed: {e}")
        return False


def demo_dynamic_eflow():
    """Demonstrate the dynamic electrical-flow structure against its oracle."""
    print("🔌 Dynamic Electrical Flow Demo")
    print("-" * 30)

    try:
        from src.dynamic import DeleteBetween, EFlowStructure
        from src.graph import InsertEdge
        from src.oracles import oracle_energy
        from src.utils.generators import random_planar_graph

        instance = random_planar_graph(60, seed=1)
        structure = EFlowStructure(instance.graph, r=16, epsilon=0.3, seed=1)
        u, v, w = instance.removed[0]
        structure.apply_update(InsertEdge(u, v, w))
        first = next(structure.graph.edges())
        structure.apply_update(DeleteBetween(first.u, first.v))

        answer = structure.query(0, 59)
        oracle = oracle_energy(structure.graph, 0, 59)
        print(f"✓ Applied one insertion and one deletion")
        print(f"📊 Answer {answer:.4f} vs oracle {oracle:.4f}")
        if math.isfinite(oracle):
            print(f"📊 Ratio {answer / oracle:.4f} (tolerance 1 ± 0.3)")
        return True

    except Exception as e:
        print(f"❌ Electrical flow demo failed: {e}")
        return False


def demo_replay():
    """Demonstrate script replay in the max-flow and shortest-path modes."""
    print("🔁 Replay Demo")
    print("-" * 30)

    try:
        from src.data_models import ReplayParams
        from src.oracles import replay_compare
        from src.utils.generators import random_planar_graph, random_script

        instance = random_planar_graph(40, seed=2)
        for mode in ("maxflow", "apsp"):
            ops = random_script(instance, updates=20, queries=10, seed=2, mode=mode)
            report = replay_compare(instance.graph, ops, mode, ReplayParams(r=12), seed=2)
            print(f"✓ {mode}: {len(report.records)} queries, failure fraction {report.failure_fraction:.2f}")
        return True

    except Exception as e:
        print(f"❌ Replay demo failed: {e}")
        return False


def demo_omv():
    """Demonstrate the OMv gadget."""
    print("🧮 OMv Gadget Demo")
    print("-" * 30)

    try:
        import numpy as np

        from src.dynamic import omv_answer, omv_build

        instance = omv_build(np.eye(3, dtype=bool))
        hit = omv_answer(instance, [1, 0, 0], [1, 0, 0], r=4, seed=0)
        miss = omv_answer(instance, [1, 0, 0], [0, 1, 0], r=4, seed=0)
        print(f"✓ u^T I v with u = v = e1: {hit} (expected 1)")
        print(f"✓ u^T I v with u = e1, v = e2: {miss} (expected 0)")
        return True

    except Exception as e:
        print(f"❌ OMv demo failed: {e}")
        return False


def main():
    """Run the complete demo."""
    print("🎯 Dynamic Vertex-Sparsifier Toolkit Demo")
    print("=" * 40)

    demos = [
        demo_rdivision,
        demo_schur,
        demo_dynamic_eflow,
        demo_replay,
        demo_omv,
    ]

    success_count = 0
    for demo in demos:
        if demo():
            success_count += 1
        print()

    print("=" * 40)
    print(f"🎉 Demo completed: {success_count}/{len(demos)} components working")

    if success_count == len(demos):
        print("\n✅ All core components are functional!")
        print("🚀 Try the command line with: ./run.sh gen random-planar --size 200 --ops 100 --queries 20 --out demo")
    else:
        print("\n⚠️  Some components had issues. Check the output above.")


if __name__ == "__main__":
    main()
