#!/usr/bin/env python3
"""
Cathaul Setup Script
Creates the virtual environment, installs dependencies and runs a smoke check
"""

import os
import sys
import subprocess
from pathlib import Path

SMOKE_FIXTURE = os.path.join('fixtures', 's3_a3.json')


def check_python_version():
    """Check if Python version is 3.9 or higher"""
    if sys.version_info < (3, 9):
        print("❌ Python 3.9 or higher is required")
        print(f"Current version: {sys.version}")
        sys.exit(1)
    print(f"✅ Python version: {sys.version.split()[0]}")


def venv_executable(name):
    if sys.platform == 'win32':
        return os.path.join('venv', 'Scripts', name)
    return os.path.join('venv', 'bin', name)


def create_virtual_environment():
    """Create a virtual environment"""
    if os.path.exists('venv'):
        print("✅ Virtual environment already exists")
        return

    print("📦 Creating virtual environment...")
    try:
        subprocess.run([sys.executable, '-m', 'venv', 'venv'], check=True)
        print("✅ Virtual environment created")
    except subprocess.CalledProcessError:
        print("❌ Failed to create virtual environment")
        sys.exit(1)


def install_dependencies():
    """Install Python dependencies"""
    print("📦 Installing dependencies...")
    try:
        subprocess.run([venv_executable('pip'), 'install', '-r', 'requirements.txt'], check=True)
        print("✅ Dependencies installed")
    except subprocess.CalledProcessError:
        print("❌ Failed to install dependencies")
        sys.exit(1)


def create_env_file():
    """Create .env file from .env.example"""
    env_file = Path('.env')
    if env_file.exists():
        print("✅ .env file already exists")
        return

    print("⚙️  Creating .env configuration file...")
    env_file.write_text(Path('.env.example').read_text())
    print("✅ .env file created (development profile)")


def smoke_check():
    """Validate the smallest finite crossed module"""
    print("🔬 Running smoke check...")
    try:
        subprocess.run([venv_executable('python'), 'app.py', 'validate', '--fixture', SMOKE_FIXTURE],
                       check=True)
        print("✅ Smoke check passed")
    except subprocess.CalledProcessError as e:
        print(f"❌ Smoke check failed with exit code {e.returncode}")
        sys.exit(1)


def print_next_steps():
    """Print next steps for the user"""
    print("\n" + "="*60)
    print("🎉 SETUP COMPLETE!")
    print("="*60)

    activate = 'venv\\Scripts\\activate' if sys.platform == 'win32' else 'source venv/bin/activate'
    print("\n📋 Next Steps:")
    print(f"1. Activate the environment:  {activate}")
    print("2. Run a suite:")
    print("   python app.py transport --fixture fixtures/su2_testbed.json")
    print("   python app.py gauge --fixture fixtures/so3_cover.json --timings")
    print("3. Run the tests:  pytest")

    print("\n📖 For the fixture format and report layout, see README.md")


def main():
    """Main setup process"""
    print("🔗 Cathaul Setup")
    print("="*40)

    check_python_version()
    create_virtual_environment()
    install_dependencies()
    create_env_file()
    smoke_check()
    print_next_steps()


if __name__ == '__main__':
    main()
