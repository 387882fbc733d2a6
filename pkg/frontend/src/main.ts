import './styles.css'
import { ApiClient } from './api'
import { ConsultationApp } from './app'

const root = document.getElementById('app')
if (!root) throw new Error('missing #app mount point')

const app = new ConsultationApp(root, new ApiClient())
void app.start().catch((failure) => {
  root.innerHTML = `<p class="fatal">Failed to reach the consultation service: ${
    failure instanceof Error ? failure.message : String(failure)
  }</p>`
})
