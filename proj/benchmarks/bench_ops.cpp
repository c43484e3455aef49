// benchmarks land with the solver
