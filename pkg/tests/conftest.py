import json
import time

import pytest

from app.core.logging import setup_logging
from app.services.algebra_service import build_group_algebra, dump_algebra
from app.services.lyndon_service import build_lyndon

# ========================================
# ÁLGEBRAS
# ========================================

@pytest.fixture(scope="session")
def lyndon():
    """Fábrica cacheada de E_{n+1}"""
    cache = {}

    def make(n):
        if n not in cache:
            cache[n] = build_lyndon(n)
        return cache[n]

    return make


@pytest.fixture(scope="session")
def e2(lyndon):
    return lyndon(1)


@pytest.fixture(scope="session")
def e5(lyndon):
    return lyndon(4)


@pytest.fixture(scope="session")
def e6(lyndon):
    return lyndon(5)


@pytest.fixture(scope="session")
def e8(lyndon):
    return lyndon(7)


S3_PERMUTATIONS = {
    "e": (1, 2, 3),
    "(12)": (2, 1, 3),
    "(13)": (3, 2, 1),
    "(23)": (1, 3, 2),
    "(123)": (2, 3, 1),
    "(132)": (3, 1, 2),
}


@pytest.fixture(scope="session")
def s3():
    """Álgebra de complejos de S3; (p∘q)(i) = p(q(i))"""
    by_images = {images: name for name, images in S3_PERMUTATIONS.items()}

    def product(g, h):
        p, q = S3_PERMUTATIONS[g], S3_PERMUTATIONS[h]
        return by_images[tuple(p[q[i] - 1] for i in range(3))]

    return build_group_algebra("S3", list(S3_PERMUTATIONS), product)


# ========================================
# ARCHIVOS
# ========================================

@pytest.fixture
def algebra_file(tmp_path):
    """Escribe un álgebra como JSON y devuelve la ruta"""

    def write(alg, name=None):
        path = tmp_path / (name or f"{alg.name}.json")
        path.write_text(json.dumps(dump_algebra(alg)), encoding="utf-8")
        return str(path)

    return write


@pytest.fixture(scope="session")
def golden_dir(request):
    return request.config.rootpath / "tests" / "fixtures" / "golden"


# ========================================
# PERFORMANCE FIXTURES
# ========================================

@pytest.fixture
def performance_tracker():
    """Tracker para medir performance de tests"""

    class PerformanceTracker:
        def __init__(self):
            self.times = {}

        def start(self, operation):
            self.times[operation] = time.perf_counter()

        def end(self, operation):
            if operation in self.times:
                duration = time.perf_counter() - self.times[operation]
                print(f"⏱️ {operation}: {duration:.3f}s")
                return duration
            return None

    return PerformanceTracker()


# ========================================
# ENVIRONMENT SETUP
# ========================================

@pytest.fixture(scope="session", autouse=True)
def quiet_logging():
    setup_logging(level="WARNING")


@pytest.fixture(autouse=True)
def setup_test_environment(monkeypatch):
    """Setup automático del entorno de test"""
    monkeypatch.setenv("LOG_LEVEL", "WARNING")
    monkeypatch.setenv("WORKER_THREADS", "1")
