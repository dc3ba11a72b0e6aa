"""Build driver: compiles the CMake extension and drops it in the package."""

import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        source_dir = Path(__file__).resolve().parent
        build_dir = Path(self.build_temp) / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)
        subprocess.run(
            [
                "cmake",
                str(source_dir),
                "-DCMAKE_BUILD_TYPE=Release",
                "-DETOC_BUILD_PYTHON=ON",
                f"-Dpybind11_DIR={self._pybind11_dir()}",
                f"-DPython3_EXECUTABLE={sys.executable}",
            ],
            cwd=build_dir,
            check=True,
        )
        subprocess.run(
            ["cmake", "--build", ".", "--target", "_etoc", "-j"],
            cwd=build_dir,
            check=True,
        )
        built = next(build_dir.glob("_etoc.*.so"), None) or next(
            build_dir.glob("_etoc.so")
        )
        dest = Path(self.get_ext_fullpath(ext.name))
        dest.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy2(built, dest)

    @staticmethod
    def _pybind11_dir():
        import pybind11

        return pybind11.get_cmake_dir()


setup(
    ext_modules=[CMakeExtension("etoc._etoc")],
    cmdclass={"build_ext": CMakeBuild},
)
