"""CMake-driven build of the dgkit._dgkit extension module."""

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
        source_dir = Path(__file__).parent.resolve()
        build_dir = Path(self.build_temp).resolve() / "cmake"
        build_dir.mkdir(parents=True, exist_ok=True)
        subprocess.check_call(
            [
                "cmake",
                "-S", str(source_dir),
                "-B", str(build_dir),
                "-DCMAKE_BUILD_TYPE=Release",
                "-DSKBUILD=ON",  # library + bindings only, no test targets
                f"-DPython3_EXECUTABLE={sys.executable}",
            ]
        )
        subprocess.check_call(["cmake", "--build", str(build_dir), "--target", "_dgkit"])
        built = next((build_dir / "dgkit").glob("_dgkit*.so"))
        dest = Path(self.get_ext_fullpath(ext.name)).resolve()
        dest.parent.mkdir(parents=True, exist_ok=True)
        self.copy_file(str(built), str(dest))


setup(
    ext_modules=[CMakeExtension("dgkit._dgkit")],
    cmdclass={"build_ext": CMakeBuild},
)
