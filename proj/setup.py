# Builds the pmimo._core extension straight from the C++ sources so that
# `pip install -e . --no-build-isolation` needs nothing beyond setuptools,
# pybind11 and a system Eigen. Keep the source list in sync with
# src/CMakeLists.txt.
import subprocess

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

CORE_SOURCES = [
    "src/array.cpp",
    "src/beamforming.cpp",
    "src/beampattern.cpp",
    "src/csv.cpp",
    "src/experiment.cpp",
    "src/rng.cpp",
    "src/sinr.cpp",
    "src/waveform.cpp",
]


def eigen_include_dir():
    try:
        out = subprocess.run(
            ["pkg-config", "--cflags-only-I", "eigen3"],
            capture_output=True, text=True, check=True,
        ).stdout
        for token in out.split():
            if token.startswith("-I"):
                return token[2:]
    except (OSError, subprocess.CalledProcessError):
        pass
    return "/usr/include/eigen3"


ext = Pybind11Extension(
    "pmimo._core",
    sources=CORE_SOURCES + ["bindings/pymodule.cpp"],
    include_dirs=["include", "vendor", eigen_include_dir()],
    cxx_std=20,
    extra_compile_args=["-O2"],
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
